#include "core/geodesic.hpp"

#include <cmath>

#include "core/elliptic.hpp"
#include "core/pendulum.hpp"

namespace se2sr {
namespace {

// Gudermannian via tanh to stay finite for large arguments.
double gd(double w) { return 2.0 * std::atan(std::tanh(0.5 * w)); }

PoseU local_pose_unwrapped(const Geodesic& g, double t) {
  PoseU q{0.0, 0.0, 0.0};
  switch (g.cls) {
    case GeodesicClass::S:
      q.theta = g.line_rate * t;
      return q;
    case GeodesicClass::U:
      q.x = g.line_rate * t;
      return q;
    case GeodesicClass::O: {
      const double k = g.par.k, beta = g.par.sigma_nu;
      const double w = g.w0 + t;
      const Jacobi jw = jacobi_sn_cn_dn(w, k);
      const double drift = t + g.eps0 - jacobi_epsilon(w, k);
      q.x = (beta / k) * (g.cn0 * (g.dn0 - jw.dn) + g.sn0 * drift);
      q.y = (1.0 / k) * (g.sn0 * (g.dn0 - jw.dn) - g.cn0 * drift);
      q.theta = -beta * (jacobi_am(w, k) - g.am0);
      return q;
    }
    case GeodesicClass::R: {
      const double k = g.par.k, sigma = g.par.sigma_c;
      const double w = g.w0 + t / k;
      const Jacobi jw = jacobi_sn_cn_dn(w, k);
      const double drift = t / k + g.eps0 - jacobi_epsilon(w, k);
      q.x = sigma * k * (g.dn0 * (g.cn0 - jw.cn) + g.sn0 * drift);
      q.y = sigma * (k * k * g.sn0 * (g.cn0 - jw.cn) - g.dn0 * drift);
      q.theta = std::asin(k * g.sn0) - std::asin(k * jw.sn);
      return q;
    }
    case GeodesicClass::Sep: {
      const double beta = g.par.sigma_nu, sigma = g.par.sigma_c;
      const double w = g.w0 + t;
      const double shw = 1.0 / std::cosh(w), thw = std::tanh(w);
      const double drift = t + g.eps0 - thw;  // eps0 = tanh(w0)
      q.x = beta * sigma * (g.cn0 * (g.cn0 - shw) + g.sn0 * drift);
      q.y = sigma * (g.sn0 * (g.cn0 - shw) - g.cn0 * drift);
      q.theta = -beta * (gd(w) - g.am0);
      return q;
    }
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

// Collects t = start + n * step for integer n with t in the open interval
// (0, t_max), ascending. step > 0.
std::vector<double> arithmetic_times(double start, double step, double t_max) {
  std::vector<double> out;
  const double lo = 1e-12, hi = t_max - 1e-12;
  double n0 = std::ceil((lo - start) / step);
  for (double n = n0;; n += 1.0) {
    const double t = start + n * step;
    if (t < lo) continue;
    if (t > hi) break;
    out.push_back(t);
  }
  return out;
}

}  // namespace

Geodesic make_geodesic(const Pose& base, const PendulumState& s0) {
  Geodesic g;
  g.base = Pose{base.x, base.y, wrap_2pi(base.theta)};
  g.s0 = PendulumState{wrap_4pi(s0.nu), s0.c};
  g.cls = classify(g.s0);

  switch (g.cls) {
    case GeodesicClass::S:
      g.line_rate = std::cos(0.5 * g.s0.nu) >= 0.0 ? -1.0 : 1.0;
      return g;
    case GeodesicClass::U:
      g.line_rate = std::sin(0.5 * g.s0.nu) >= 0.0 ? 1.0 : -1.0;
      return g;
    case GeodesicClass::O: {
      g.par = fit_elliptic_params(g.s0);
      g.K = complete_integrals(g.par.k).K;
      g.w0 = g.par.phi;
      const Jacobi j0 = jacobi_sn_cn_dn(g.w0, g.par.k);
      g.sn0 = j0.sn;
      g.cn0 = j0.cn;
      g.dn0 = j0.dn;
      g.eps0 = jacobi_epsilon(g.w0, g.par.k);
      g.am0 = jacobi_am(g.w0, g.par.k);
      return g;
    }
    case GeodesicClass::R: {
      g.par = fit_elliptic_params(g.s0);
      g.K = complete_integrals(g.par.k).K;
      g.w0 = g.par.phi / g.par.k;
      const Jacobi j0 = jacobi_sn_cn_dn(g.w0, g.par.k);
      g.sn0 = j0.sn;
      g.cn0 = j0.cn;
      g.dn0 = j0.dn;
      g.eps0 = jacobi_epsilon(g.w0, g.par.k);
      return g;
    }
    case GeodesicClass::Sep: {
      g.par = fit_elliptic_params(g.s0);
      g.w0 = g.par.phi;
      g.sn0 = std::tanh(g.w0);
      g.cn0 = 1.0 / std::cosh(g.w0);  // dn == cn on the separatrix
      g.dn0 = g.cn0;
      g.eps0 = g.sn0;
      g.am0 = gd(g.w0);
      return g;
    }
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

PoseU geodesic_eval_unwrapped(const Geodesic& g, double t) {
  const PoseU q = local_pose_unwrapped(g, t);
  const double cb = std::cos(g.base.theta), sb = std::sin(g.base.theta);
  return PoseU{g.base.x + cb * q.x - sb * q.y, g.base.y + sb * q.x + cb * q.y,
               g.base.theta + q.theta};
}

Pose geodesic_eval(const Geodesic& g, double t) {
  const PoseU q = geodesic_eval_unwrapped(g, t);
  return Pose{q.x, q.y, wrap_2pi(q.theta)};
}

PendulumState pendulum_at(const Geodesic& g, double t) {
  switch (g.cls) {
    case GeodesicClass::S:
    case GeodesicClass::U:
      return g.s0;
    case GeodesicClass::O: {
      const double k = g.par.k, beta = g.par.sigma_nu;
      const Jacobi j = jacobi_sn_cn_dn(g.w0 + t, k);
      return {wrap_4pi(2.0 * std::atan2(beta * k * j.sn, beta * j.dn)),
              2.0 * k * j.cn};
    }
    case GeodesicClass::R: {
      const double k = g.par.k, sigma = g.par.sigma_c;
      const Jacobi j = jacobi_sn_cn_dn(g.w0 + t / k, k);
      return {wrap_4pi(2.0 * std::atan2(sigma * j.sn, j.cn)),
              2.0 * sigma * j.dn / k};
    }
    case GeodesicClass::Sep: {
      const double beta = g.par.sigma_nu, sigma = g.par.sigma_c;
      const double w = g.w0 + t;
      const double shw = 1.0 / std::cosh(w), thw = std::tanh(w);
      return {wrap_4pi(2.0 * std::atan2(beta * sigma * thw, beta * shw)),
              2.0 * sigma * shw};
    }
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

double curvature_of(const PendulumState& s) {
  const double u = std::sin(0.5 * s.nu);
  const double v = std::cos(0.5 * s.nu);
  if (u == 0.0) return std::copysign(kInf, -v);
  return -v / u;
}

Pose exponential_map(const Pose& base, const Covector& p, double t) {
  if (!(t >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "arclength must be nonnegative");
  const PendulumState s0 = covector_to_pendulum(base.theta, p);
  return geodesic_eval(make_geodesic(base, s0), t);
}

std::vector<double> cusp_times(const Geodesic& g, double t_max) {
  if (!(t_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  switch (g.cls) {
    case GeodesicClass::S:
      throw Error(ErrorCode::UnsupportedClass,
                  "cusps are undefined for a stationary planar point");
    case GeodesicClass::U:
      return {};
    case GeodesicClass::O:
      // sin(nu/2) proportional to sn(phi + t), zeros at phi + t = 2nK.
      return arithmetic_times(-g.par.phi, 2.0 * g.K, t_max);
    case GeodesicClass::R:
      // zeros of sn((phi + t)/k) at (phi + t)/k = 2nK.
      return arithmetic_times(-g.par.phi, 2.0 * g.par.k * g.K, t_max);
    case GeodesicClass::Sep: {
      // tanh(phi + t) has its only zero at t = -phi.
      const double t = -g.par.phi;
      if (t > 1e-12 && t < t_max - 1e-12) return {t};
      return {};
    }
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

std::vector<double> inflection_times(const Geodesic& g, double t_max) {
  if (!(t_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  switch (g.cls) {
    case GeodesicClass::S:
      throw Error(ErrorCode::UnsupportedClass,
                  "inflections are undefined for a stationary planar point");
    case GeodesicClass::U:
    case GeodesicClass::O:
    case GeodesicClass::Sep:
      // Heading rate -cos(nu/2) is bounded away from zero (O, Sep) or the
      // curve is a straight line (U); the signed curvature never crosses 0.
      return {};
    case GeodesicClass::R:
      // cos(nu/2) = cn((phi + t)/k), zeros at (phi + t)/k = (2n + 1)K.
      return arithmetic_times(g.par.k * g.K - g.par.phi,
                              2.0 * g.par.k * g.K, t_max);
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

std::vector<CurveSample> sample_curve(const Geodesic& g, double t_max, int n) {
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  if (!(t_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = t_max * i / (n - 1);
    CurveSample s;
    s.t = t;
    s.pose = geodesic_eval(g, t);
    s.curvature = curvature_of(pendulum_at(g, t));
    out.push_back(s);
  }
  return out;
}

}  // namespace se2sr
