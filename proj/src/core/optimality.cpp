#include "core/optimality.hpp"

#include <cmath>
#include <vector>

#include "core/symmetry.hpp"

namespace se2sr {
namespace {

// Smallest element of {start + n * step : n integer} strictly above 1e-12.
double first_positive(double start, double step) {
  double t = start - step * std::floor(start / step);
  if (t <= 1e-12) t += step;
  return t;
}

// Scalar endpoint function whose zeros are exactly the parameters where the
// chord reflection preserves the endpoint: x cos(theta/2) + y sin(theta/2)
// with the unwrapped local heading.
double chord_gap(const Geodesic& g, double t) {
  const PoseU q = geodesic_eval_unwrapped(g, t);
  // Work relative to the base pose so the scalar is frame-independent.
  const double cb = std::cos(g.base.theta), sb = std::sin(g.base.theta);
  const double dx = q.x - g.base.x, dy = q.y - g.base.y;
  const double lx = cb * dx + sb * dy, ly = -sb * dx + cb * dy;
  const double half = 0.5 * (q.theta - g.base.theta);
  return lx * std::cos(half) + ly * std::sin(half);
}

}  // namespace

double first_cusp_time(const Geodesic& g) {
  switch (g.cls) {
    case GeodesicClass::S:
    case GeodesicClass::U:
      return kInf;
    case GeodesicClass::O:
      return first_positive(-g.par.phi, 2.0 * g.K);
    case GeodesicClass::R:
      return first_positive(-g.par.phi, 2.0 * g.par.k * g.K);
    case GeodesicClass::Sep:
      return -g.par.phi > 1e-12 ? -g.par.phi : kInf;
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

CutInfo cut_time(const Geodesic& g) {
  CutInfo info;
  info.t_cusp_first = first_cusp_time(g);

  switch (g.cls) {
    case GeodesicClass::S:
    case GeodesicClass::U:
    case GeodesicClass::Sep:
      return info;  // never cut

    case GeodesicClass::O: {
      // The heading advances by exactly pi over half a pendulum period, so
      // the heading-flip reflection preserves the endpoint there.
      info.t_cut = 2.0 * g.K;
      info.method = CutMethod::HalfPeriod;
      const MaxwellCheck mc = maxwell_check(g, info.t_cut, 1e-8, 128);
      info.maxwell_kind = mc.t_distinct ? 'T' : 'C';
      info.maxwell_residual = mc.t_residual;
      return info;
    }

    case GeodesicClass::R: {
      const double period = 4.0 * g.par.k * g.K;
      const double lo = 0.5 * period * (1.0 + 1e-9);
      const double hi = period * (1.0 - 1e-9);

      // The scalar also vanishes at the self-symmetric times 2k(mK - w0),
      // where the reflection maps the curve onto itself and no Maxwell point
      // arises. Those zeros can sit arbitrarily close to the genuine one, so
      // the scan is split at them instead of relying on node spacing.
      std::vector<double> edges{lo, hi};
      for (double m = std::ceil((lo / (2.0 * g.par.k) + g.w0) / g.K);;
           m += 1.0) {
        const double t = 2.0 * g.par.k * (m * g.K - g.w0);
        if (t >= hi) break;
        if (t > lo) edges.push_back(t);
      }
      std::sort(edges.begin(), edges.end());

      std::vector<double> candidates;
      const double margin = 1e-10 * period;
      for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        double a0 = edges[e] + (e > 0 ? margin : 0.0);
        double b0 = edges[e + 1] - (e + 2 < edges.size() ? margin : 0.0);
        if (b0 <= a0) continue;
        const int n = 128;
        double tp = a0, fp = chord_gap(g, a0);
        for (int j = 1; j <= n; ++j) {
          const double tq = a0 + (b0 - a0) * j / n;
          const double fq = chord_gap(g, tq);
          if (fp * fq < 0.0) {
            double a = tp, b = tq, fa = fp;
            for (int it = 0; it < 100 && b - a > 1e-13 * period; ++it) {
              const double m = 0.5 * (a + b), fm = chord_gap(g, m);
              if ((fa <= 0.0) == (fm <= 0.0)) {
                a = m;
                fa = fm;
              } else {
                b = m;
              }
            }
            candidates.push_back(0.5 * (a + b));
          }
          tp = tq;
          fp = fq;
        }
      }
      // The self-symmetric times themselves, in case the genuine root has
      // collided with one of them.
      candidates.insert(candidates.end(), edges.begin() + 1, edges.end() - 1);
      std::sort(candidates.begin(), candidates.end());

      double fallback = kInf, fallback_res = kInf;
      for (double root : candidates) {
        const PoseU q = geodesic_eval_unwrapped(g, root);
        const double scale = std::max(
            1.0, std::abs(q.x - g.base.x) + std::abs(q.y - g.base.y));
        const MaxwellCheck mc = maxwell_check(g, root, 1e-8 * scale, 128);
        if (mc.s_coincident && mc.s_distinct) {
          info.t_cut = root;
          info.method = CutMethod::MaxwellSearch;
          info.maxwell_kind = 'S';
          info.maxwell_residual = mc.s_residual;
          return info;
        }
        if (mc.s_coincident && root < fallback) {
          fallback = root;
          fallback_res = mc.s_residual;
        }
      }
      if (fallback < kInf) {
        // Only a degenerate coincidence was found: the genuine Maxwell point
        // has merged with a self-symmetric time. Optimality still ends here.
        info.t_cut = fallback;
        info.method = CutMethod::MaxwellSearch;
        info.maxwell_kind = 'C';
        info.maxwell_residual = fallback_res;
        return info;
      }
      throw Error(ErrorCode::NoConvergence,
                  "no endpoint-preserving reflection found inside the first "
                  "pendulum period");
    }
  }
  throw Error(ErrorCode::Internal, "unreachable geodesic class");
}

bool is_optimal(const Geodesic& g, double T) {
  if (!(T >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "arclength must be nonnegative");
  const CutInfo info = cut_time(g);
  if (info.t_cut == kInf) return true;
  return T <= info.t_cut + 1e-12 * std::max(1.0, info.t_cut);
}

}  // namespace se2sr
