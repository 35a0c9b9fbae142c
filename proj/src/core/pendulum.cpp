#include "core/pendulum.hpp"

#include <cmath>

#include "core/elliptic.hpp"

namespace se2sr {

const char* class_name(GeodesicClass cls) {
  switch (cls) {
    case GeodesicClass::S: return "S";
    case GeodesicClass::U: return "U";
    case GeodesicClass::R: return "R";
    case GeodesicClass::O: return "O";
    case GeodesicClass::Sep: return "Sep";
  }
  return "?";
}

PendulumState covector_to_pendulum(double theta, const Covector& p) {
  double a = p.p1 * std::cos(theta) + p.p2 * std::sin(theta);
  double b = -p.p3;
  double level = a * a + p.p3 * p.p3;  // = 2H
  if (std::fabs(level - 1.0) > 1e-9) {
    throw Error(ErrorCode::Precondition,
                "covector is off the unit Hamiltonian level: |2H - 1| = " +
                    std::to_string(std::fabs(level - 1.0)));
  }
  double nu = wrap_4pi(2.0 * std::atan2(a, b));
  double c = 2.0 * (p.p2 * std::cos(theta) - p.p1 * std::sin(theta));
  return {nu, c};
}

Covector pendulum_to_covector(double theta, const PendulumState& s) {
  double a = std::sin(s.nu / 2.0);
  double b = std::cos(s.nu / 2.0);
  double ct = std::cos(theta), st = std::sin(theta);
  Covector p;
  p.p1 = a * ct - 0.5 * s.c * st;
  p.p2 = a * st + 0.5 * s.c * ct;
  p.p3 = -b;
  return p;
}

double energy(const PendulumState& s) {
  return 0.5 * s.c * s.c - std::cos(s.nu);
}

GeodesicClass classify(const PendulumState& s) {
  double sh = std::sin(s.nu / 2.0);
  double ch = std::cos(s.nu / 2.0);
  if (std::fabs(s.c) <= kClassTol && std::fabs(sh) <= kClassTol) {
    return GeodesicClass::S;
  }
  if (std::fabs(s.c) <= kClassTol && std::fabs(ch) <= kClassTol) {
    return GeodesicClass::U;
  }
  double E = energy(s);
  if (std::fabs(E - 1.0) <= kClassTol) return GeodesicClass::Sep;
  return E > 1.0 ? GeodesicClass::R : GeodesicClass::O;
}

double modulus_for(const PendulumState& s, GeodesicClass cls) {
  // (1+E)/2 = c^2/4 + sin^2(nu/2), exact and nonnegative by construction.
  double sh = std::sin(s.nu / 2.0);
  double half1pE = 0.25 * s.c * s.c + sh * sh;
  switch (cls) {
    case GeodesicClass::O:
      return std::sqrt(half1pE);
    case GeodesicClass::R:
      return std::sqrt(1.0 / half1pE);
    case GeodesicClass::Sep:
      return 1.0;
    default:
      throw Error(ErrorCode::UnsupportedClass,
                  std::string("no elliptic modulus for class ") +
                      class_name(cls));
  }
}

double pendulum_period(const PendulumState& s) {
  GeodesicClass cls = classify(s);
  switch (cls) {
    case GeodesicClass::S:
    case GeodesicClass::U:
    case GeodesicClass::Sep:
      return kInf;
    case GeodesicClass::O: {
      double k = modulus_for(s, cls);
      return 4.0 * complete_integrals(k).K;
    }
    case GeodesicClass::R: {
      double k = modulus_for(s, cls);
      return 4.0 * k * complete_integrals(k).K;
    }
  }
  return kInf;
}

EllipticParams fit_elliptic_params(const PendulumState& s) {
  GeodesicClass cls = classify(s);
  double sh = std::sin(s.nu / 2.0);
  double ch = std::cos(s.nu / 2.0);
  EllipticParams out;
  switch (cls) {
    case GeodesicClass::O: {
      // sin(nu/2) = beta k sn(phi + t), c = 2 k cn(phi + t); the pair
      // (beta sin(nu/2)/k, c/(2k)) lies on the unit circle exactly because
      // k^2 = c^2/4 + sin^2(nu/2).
      double k = modulus_for(s, cls);
      int beta = sign_or(ch, +1);
      double snp = beta * sh / k;
      double cnp = 0.5 * s.c / k;
      double amp = std::atan2(snp, cnp);
      out.k = k;
      out.phi = incomplete_F(amp, k);
      out.sigma_nu = beta;
      out.sigma_c = sign_or(s.c, +1);
      return out;
    }
    case GeodesicClass::R: {
      // sin(nu/2) = sigma sn((phi+t)/k), cos(nu/2) = cn((phi+t)/k),
      // c = 2 sigma dn((phi+t)/k) / k, with sigma = sgn(c) (never zero here).
      double k = modulus_for(s, cls);
      int sigma = sign_or(s.c, +1);
      double amp = std::atan2(sigma * sh, ch);
      out.k = k;
      out.phi = k * incomplete_F(amp, k);
      out.sigma_c = sigma;
      out.sigma_nu = sign_or(ch, +1);
      return out;
    }
    case GeodesicClass::Sep: {
      // sin(nu/2) = beta sigma tanh(phi + t), cos(nu/2) = beta sech(phi + t),
      // c = 2 sigma sech(phi + t). Solving sinh(phi) = tanh/sech stays finite
      // even when sin(nu/2) rounds to 1, where atanh would overflow.
      int beta = sign_or(ch, +1);
      int sigma = sign_or(s.c, +1);
      out.k = 1.0;
      out.phi = std::asinh(sigma * sh / ch);
      out.sigma_c = sigma;
      out.sigma_nu = beta;
      return out;
    }
    default:
      throw Error(ErrorCode::UnsupportedClass,
                  std::string("class ") + class_name(cls) +
                      " has no elliptic parameters");
  }
}

}  // namespace se2sr
