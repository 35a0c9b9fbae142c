// Shared value types, error handling, and angle utilities for the se2sr core.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace se2sr {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kFourPi = 4.0 * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Energy/coordinate band used to snap near-equilibrium and near-separatrix
// pendulum states onto their degenerate class.
inline constexpr double kClassTol = 1e-10;

enum class ErrorCode {
  Domain,            // argument outside the mathematical domain
  Precondition,      // caller-supplied data violates a documented precondition
  UnsupportedClass,  // operation undefined for this geodesic class
  Integration,       // adaptive integrator step underflow
  NoConvergence,     // iterative search exhausted its budget
  InvalidArgument,   // malformed argument (nonfinite, bad count, null)
  Internal,          // invariant violated inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Group element of R^2 x S^1. theta is stored wrapped into [0, 2pi) when a
// pose crosses the public API; internal evaluation keeps angles unwrapped.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Pose with an unwrapped (continuous in t) heading angle.
struct PoseU {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct Covector {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

// Coordinates on the covector cylinder; nu lives on the double cover
// R/(4pi Z), c is the pendulum angular rate.
struct PendulumState {
  double nu = 0.0;
  double c = 0.0;
};

enum class GeodesicClass { S, U, R, O, Sep };

const char* class_name(GeodesicClass cls);

// Fitted parameters of the closed-form trajectory for classes R, O, Sep:
// modulus k, phase phi, and the two sign factors sgn(c), sgn(cos(nu/2))
// frozen at t = 0.
struct EllipticParams {
  double k = 0.0;
  double phi = 0.0;
  int sigma_c = +1;
  int sigma_nu = +1;
};

inline double wrap_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

inline double wrap_4pi(double a) {
  double r = std::fmod(a, kFourPi);
  if (r < 0.0) r += kFourPi;
  return r;
}

// Signed representative in (-pi, pi].
inline double wrap_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

// Geodesic distance on S^1, always in [0, pi].
inline double ang_dist(double a, double b) { return std::fabs(wrap_pi(a - b)); }

inline Pose wrap_pose(const PoseU& p) { return Pose{p.x, p.y, wrap_2pi(p.theta)}; }

// SE(2) group operations. A pose acts on the plane by rotation then
// translation; composition matches matrix composition g1 * g2.
inline Pose se2_mul(const Pose& g1, const Pose& g2) {
  double c = std::cos(g1.theta), s = std::sin(g1.theta);
  return Pose{g1.x + c * g2.x - s * g2.y, g1.y + s * g2.x + c * g2.y,
              g1.theta + g2.theta};
}

inline Pose se2_inv(const Pose& g) {
  double c = std::cos(g.theta), s = std::sin(g.theta);
  return Pose{-(c * g.x + s * g.y), -(-s * g.x + c * g.y), -g.theta};
}

inline int sign_or(double v, int fallback) {
  if (v > 0.0) return +1;
  if (v < 0.0) return -1;
  return fallback;
}

}  // namespace se2sr
