#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/pendulum.hpp"

namespace se2sr {
namespace {

using State = std::array<double, 5>;

State rhs(const State& s) {
  const double nu = s[0], c = s[1], th = s[4];
  const double u = std::sin(0.5 * nu);
  return {c, -std::sin(nu), u * std::cos(th), u * std::sin(th),
          -std::cos(0.5 * nu)};
}

// Dormand-Prince 5(4) coefficients (FSAL form) with the standard fourth-order
// dense-output weights.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kA71 = 35.0 / 384.0, kA73 = 500.0 / 1113.0,
                 kA74 = 125.0 / 192.0, kA75 = -2187.0 / 6784.0,
                 kA76 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

State axpy(const State& y, double h, const State& k) {
  State r;
  for (int i = 0; i < 5; ++i) r[i] = y[i] + h * k[i];
  return r;
}

}  // namespace

std::array<double, 5> OracleTrajectory::at(double t) const {
  if (times.empty()) throw Error(ErrorCode::Internal, "empty trajectory");
  if (t < times.front() - 1e-12 || t > times.back() + 1e-12)
    throw Error(ErrorCode::InvalidArgument,
                "dense evaluation outside integrated range");
  t = std::clamp(t, times.front(), times.back());
  // times is sorted; locate the step containing t.
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - times.begin());
  if (idx == 0) return states.front();
  if (idx >= times.size()) idx = times.size() - 1;
  const std::size_t step = idx - 1;  // interval [times[step], times[step+1]]
  const double h = times[step + 1] - times[step];
  const double s = (t - times[step]) / h;
  const double s1 = 1.0 - s;
  const auto& rc = cont[step];
  State out;
  for (int i = 0; i < 5; ++i) {
    out[i] = rc[0][i] +
             s * (rc[1][i] + s1 * (rc[2][i] + s * (rc[3][i] + s1 * rc[4][i])));
  }
  return out;
}

OracleTrajectory oracle_integrate(const PendulumState& s0, double t_max,
                                  double rtol, double atol) {
  if (!(t_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  OracleTrajectory traj;
  traj.rtol = rtol;
  traj.atol = atol;

  State y = {s0.nu, s0.c, 0.0, 0.0, 0.0};
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(y);

  State k1 = rhs(y);
  double h = 1e-4;
  const double h_max = 0.25;  // keeps dense interpolation near step accuracy
  const double h_min_floor = 1e-14;
  const double safety = 0.9;

  while (t < t_max) {
    if (h > h_max) h = h_max;
    if (t + h > t_max) h = t_max - t;
    if (h < h_min_floor) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "step size underflow at t=%.6g", t);
      throw Error(ErrorCode::Integration, buf);
    }

    const State k2 = rhs(axpy(y, h * kA21, k1));
    State tmp;
    for (int i = 0; i < 5; ++i) tmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    const State k3 = rhs(tmp);
    for (int i = 0; i < 5; ++i)
      tmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    const State k4 = rhs(tmp);
    for (int i = 0; i < 5; ++i)
      tmp[i] = y[i] +
               h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
    const State k5 = rhs(tmp);
    for (int i = 0; i < 5; ++i)
      tmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                           kA64 * k4[i] + kA65 * k5[i]);
    const State k6 = rhs(tmp);
    State y1;
    for (int i = 0; i < 5; ++i)
      y1[i] = y[i] + h * (kA71 * k1[i] + kA73 * k3[i] + kA74 * k4[i] +
                          kA75 * k5[i] + kA76 * k6[i]);
    const State k7 = rhs(y1);  // FSAL stage

    double err = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] +
                            kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / 5.0);

    if (err <= 1.0) {
      std::array<State, 5> rc;
      for (int i = 0; i < 5; ++i) {
        const double dy = y1[i] - y[i];
        const double bspl = h * k1[i] - dy;
        rc[0][i] = y[i];
        rc[1][i] = dy;
        rc[2][i] = bspl;
        rc[3][i] = dy - h * k7[i] - bspl;
        rc[4][i] = h * (kD1 * k1[i] + kD3 * k3[i] + kD4 * k4[i] + kD5 * k5[i] +
                        kD6 * k6[i] + kD7 * k7[i]);
      }
      traj.cont.push_back(rc);
      t += h;
      y = y1;
      k1 = k7;
      traj.times.push_back(t);
      traj.states.push_back(y);
    }

    double fac = safety * std::pow(std::max(err, 1e-10), -0.2);
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
  }
  return traj;
}

namespace {

// Bisection for a scalar function of dense time, assuming f(lo) and f(hi)
// bracket a sign change. Returns the root to absolute time accuracy tol.
template <typename F>
double bisect(const F& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// First two strictly positive zeros of c(t) along the trajectory, located by
// scanning the accepted steps and refining with dense output.
std::vector<double> momentum_zeros(const OracleTrajectory& traj, int want) {
  std::vector<double> zeros;
  const auto c_of = [&traj](double t) { return traj.at(t)[1]; };
  const int scan = 8;  // sub-samples per accepted step
  for (std::size_t s = 0; s + 1 < traj.times.size() && (int)zeros.size() < want;
       ++s) {
    const double a = traj.times[s], b = traj.times[s + 1];
    double tp = a, fp = c_of(a);
    for (int j = 1; j <= scan; ++j) {
      const double tq = a + (b - a) * j / scan;
      const double fq = c_of(tq);
      double r = -1.0;
      if (fp * fq < 0.0)
        r = bisect(c_of, tp, tq, 1e-13);
      else if (fq == 0.0)
        r = tq;
      if (r > 1e-9 && (zeros.empty() || r - zeros.back() > 1e-9))
        zeros.push_back(r);
      if ((int)zeros.size() >= want) break;
      tp = tq;
      fp = fq;
    }
  }
  return zeros;
}

}  // namespace

double pendulum_return_time(const PendulumState& s0) {
  const GeodesicClass cls = classify(s0);
  if (cls != GeodesicClass::O && cls != GeodesicClass::R)
    throw Error(ErrorCode::UnsupportedClass,
                "pendulum return time requires an oscillating or rotating "
                "state");

  double horizon = 32.0;
  for (int round = 0; round < 10; ++round, horizon *= 2.0) {
    if (horizon > 1e4)
      throw Error(ErrorCode::NoConvergence,
                  "pendulum period exceeds search horizon");
    const OracleTrajectory traj = oracle_integrate(s0, horizon);

    if (cls == GeodesicClass::R) {
      const double sigma = s0.c > 0.0 ? 1.0 : -1.0;
      const double target = s0.nu + sigma * 2.0 * kTwoPi;
      const auto g = [&traj, target](double t) { return traj.at(t)[0] - target; };
      if (g(0.0) * g(horizon) > 0.0) continue;  // not reached yet, extend
      // nu is strictly monotone for a rotating state, so one bracket scan
      // suffices.
      double lo = 0.0, hi = horizon;
      const int n = 256;
      for (int j = 1; j <= n; ++j) {
        const double tq = horizon * j / n;
        if (g(lo) * g(tq) <= 0.0) {
          hi = tq;
          break;
        }
        lo = tq;
      }
      return bisect(g, lo, hi, 1e-12);
    }

    // Oscillating: successive turning points are half a period apart.
    const std::vector<double> zeros = momentum_zeros(traj, 2);
    if (zeros.size() < 2) continue;
    const double period = 2.0 * (zeros[1] - zeros[0]);
    if (period > horizon) continue;  // recheck with a horizon covering T
    const auto back = traj.at(period);
    if (std::abs(back[0] - s0.nu) > 1e-7 || std::abs(back[1] - s0.c) > 1e-7)
      throw Error(ErrorCode::Internal, "oscillation period failed recurrence");
    return period;
  }
  throw Error(ErrorCode::NoConvergence, "pendulum period search failed");
}

}  // namespace se2sr
