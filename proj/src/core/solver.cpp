#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <random>
#include <thread>

#include "core/optimality.hpp"
#include "core/pendulum.hpp"
#include "core/symmetry.hpp"

namespace se2sr {
namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kCutSlack = 1e-9;
constexpr double kTwinLengthTol = 1e-8;
constexpr double kTableTmax = 12.0;

struct Endpoint {
  double x, y, theta;  // theta wrapped to [0, 2 pi)
};

Endpoint eval_endpoint(double nu0, double c0, double T) {
  const Geodesic g = make_geodesic(Pose{0, 0, 0}, PendulumState{wrap_4pi(nu0), c0});
  const Pose p = geodesic_eval(g, T);
  return Endpoint{p.x, p.y, p.theta};
}

// ---------------------------------------------------------------------------
// Shooting table: stratified initial states with endpoints sampled along each
// geodesic up to its (estimated) cut time.

struct TableRow {
  double nu0, c0, T;
  double x, y, theta;
};

// Cut estimate cheap enough for table construction: exact for class O, a
// plain scalar root scan (no reflection validation) for class R.
double cut_estimate(const Geodesic& g) {
  switch (g.cls) {
    case GeodesicClass::O:
      return 2.0 * g.K;
    case GeodesicClass::R: {
      const double period = 4.0 * g.par.k * g.K;
      const double lo = 0.5 * period * (1.0 + 1e-9);
      const double hi = period * (1.0 - 1e-9);
      const int n = 96;
      const auto f = [&g](double t) {
        const PoseU q = geodesic_eval_unwrapped(g, t);
        return q.x * std::cos(0.5 * q.theta) + q.y * std::sin(0.5 * q.theta);
      };
      double tp = lo, fp = f(lo);
      for (int j = 1; j <= n; ++j) {
        const double tq = lo + (hi - lo) * j / n;
        const double fq = f(tq);
        if (fp * fq < 0.0) {
          double a = tp, b = tq, fa = fp;
          for (int it = 0; it < 48; ++it) {
            const double m = 0.5 * (a + b), fm = f(m);
            if ((fa <= 0.0) == (fm <= 0.0)) {
              a = m;
              fa = fm;
            } else {
              b = m;
            }
          }
          return 0.5 * (a + b);
        }
        tp = tq;
        fp = fq;
      }
      return period;
    }
    default:
      return kInf;
  }
}

struct ShootingTable {
  std::vector<TableRow> rows;
};

const ShootingTable& shooting_table() {
  static const ShootingTable table = [] {
    ShootingTable t;
    const int n_nu = 32, n_c = 32, n_t = 96;
    t.rows.reserve(static_cast<std::size_t>(n_nu) * n_c * n_t);
    std::mt19937_64 rng(0x5e25e25eULL);
    std::uniform_real_distribution<double> jitter(0.15, 0.85);
    for (int i = 0; i < n_nu; ++i) {
      for (int j = 0; j < n_c; ++j) {
        const double nu0 = (i + jitter(rng)) * (kFourPi / n_nu);
        const double c0 = -6.5 + (j + jitter(rng)) * (13.0 / n_c);
        const Geodesic g = make_geodesic(Pose{0, 0, 0}, PendulumState{nu0, c0});
        const double t_hi = std::min(kTableTmax, cut_estimate(g));
        for (int m = 1; m <= n_t; ++m) {
          const double T = t_hi * m / n_t;
          const Pose p = geodesic_eval(g, T);
          t.rows.push_back(TableRow{nu0, c0, T, p.x, p.y, p.theta});
        }
      }
    }
    return t;
  }();
  return table;
}

// Fast rotating states: the heading completes whole swings within a short
// arclength, producing small net translations near theta = 0. The main
// table's rate range tops out well below these, so short bracket-direction
// targets would otherwise have no seed in their basin.
const ShootingTable& fast_table() {
  static const ShootingTable table = [] {
    ShootingTable t;
    const int n_nu = 16, n_c = 12, n_t = 48;
    t.rows.reserve(static_cast<std::size_t>(n_nu) * n_c * 2 * n_t);
    std::mt19937_64 rng(0xfa57fa57ULL);
    std::uniform_real_distribution<double> jitter(0.15, 0.85);
    for (int i = 0; i < n_nu; ++i) {
      for (int j = 0; j < n_c; ++j) {
        const double mag =
            6.5 * std::pow(45.0 / 6.5, (j + jitter(rng)) / n_c);
        for (const double sgn : {-1.0, 1.0}) {
          const double nu0 = (i + jitter(rng)) * (kFourPi / n_nu);
          const double c0 = sgn * mag;
          const Geodesic g =
              make_geodesic(Pose{0, 0, 0}, PendulumState{nu0, c0});
          const double t_hi = std::min(kTableTmax, cut_estimate(g));
          for (int m = 1; m <= n_t; ++m) {
            const double T = t_hi * m / n_t;
            const Pose p = geodesic_eval(g, T);
            t.rows.push_back(TableRow{nu0, c0, T, p.x, p.y, p.theta});
          }
        }
      }
    }
    return t;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Gauss-Newton refinement of the shooting residual in (nu0, c0, T).

struct Candidate {
  double nu0 = 0.0, c0 = 0.0, T = 0.0;
  double residual = kInf;
  bool converged = false;
};

Candidate refine(const Pose& tgt, double nu0, double c0, double T) {
  auto resid = [&tgt](double a, double b, double s, double r[3]) {
    const Endpoint e = eval_endpoint(a, b, s);
    r[0] = e.x - tgt.x;
    r[1] = e.y - tgt.y;
    r[2] = ang_dist(e.theta, tgt.theta);
  };
  double p[3] = {nu0, c0, T};
  double r[3];
  resid(p[0], p[1], p[2], r);
  double cost = std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]);

  for (int iter = 0; iter < 60 && cost > 1e-12; ++iter) {
    // Forward-difference Jacobian.
    double J[3][3];
    const double h = 1e-7;
    for (int c = 0; c < 3; ++c) {
      double q[3] = {p[0], p[1], p[2]};
      q[c] += h;
      double rq[3];
      resid(q[0], q[1], q[2], rq);
      for (int rr = 0; rr < 3; ++rr) J[rr][c] = (rq[rr] - r[rr]) / h;
    }
    // Solve J d = -r by Gaussian elimination with partial pivoting.
    double A[3][4];
    for (int rr = 0; rr < 3; ++rr) {
      for (int c = 0; c < 3; ++c) A[rr][c] = J[rr][c];
      A[rr][3] = -r[rr];
    }
    bool singular = false;
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int rr = c + 1; rr < 3; ++rr)
        if (std::abs(A[rr][c]) > std::abs(A[piv][c])) piv = rr;
      if (std::abs(A[piv][c]) < 1e-14) {
        singular = true;
        break;
      }
      if (piv != c)
        for (int k = c; k < 4; ++k) std::swap(A[piv][k], A[c][k]);
      for (int rr = c + 1; rr < 3; ++rr) {
        const double f = A[rr][c] / A[c][c];
        for (int k = c; k < 4; ++k) A[rr][k] -= f * A[c][k];
      }
    }
    if (singular) break;
    double d[3];
    for (int rr = 2; rr >= 0; --rr) {
      double s = A[rr][3];
      for (int k = rr + 1; k < 3; ++k) s -= A[rr][k] * d[k];
      d[rr] = s / A[rr][rr];
    }
    // Trust-region style clamping keeps steps inside the table's scale.
    const double dmax = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
    if (dmax > 2.0)
      for (double& v : d) v *= 2.0 / dmax;

    // Damped acceptance.
    bool accepted = false;
    double step = 1.0;
    for (int bt = 0; bt < 10; ++bt, step *= 0.5) {
      double q[3] = {p[0] + step * d[0], p[1] + step * d[1],
                     p[2] + step * d[2]};
      q[1] = std::clamp(q[1], -60.0, 60.0);
      q[2] = std::max(q[2], 1e-6);
      double rq[3];
      resid(q[0], q[1], q[2], rq);
      const double cq = std::abs(rq[0]) + std::abs(rq[1]) + std::abs(rq[2]);
      if (cq < cost) {
        for (int k = 0; k < 3; ++k) p[k] = q[k];
        for (int k = 0; k < 3; ++k) r[k] = rq[k];
        cost = cq;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  Candidate out;
  out.nu0 = wrap_4pi(p[0]);
  out.c0 = p[1];
  out.T = p[2];
  out.residual = cost;
  out.converged = cost <= kResidualTol;
  return out;
}

// Seeds: best table rows after greedy non-maximum suppression so the starts
// cover distinct basins, plus analytic line/rotation guesses when relevant.
std::vector<TableRow> pick_seeds(const Pose& tgt, int max_seeds) {
  const ShootingTable* tables[] = {&shooting_table(), &fast_table()};
  std::vector<std::pair<double, const TableRow*>> scored;
  scored.reserve(tables[0]->rows.size() + tables[1]->rows.size());
  for (const ShootingTable* table : tables) {
    for (const TableRow& row : table->rows) {
      const double dth = ang_dist(row.theta, tgt.theta);
      const double d2 = (row.x - tgt.x) * (row.x - tgt.x) +
                        (row.y - tgt.y) * (row.y - tgt.y) + dth * dth;
      scored.emplace_back(d2, &row);
    }
  }
  const std::size_t top = std::min<std::size_t>(scored.size(), 400);
  std::partial_sort(scored.begin(), scored.begin() + top, scored.end());

  std::vector<TableRow> seeds;
  for (std::size_t s = 0; s < top && (int)seeds.size() < max_seeds; ++s) {
    const TableRow& row = *scored[s].second;
    bool near_existing = false;
    for (const TableRow& a : seeds) {
      double dn = std::abs(row.nu0 - a.nu0);
      dn = std::min(dn, kFourPi - dn);
      if (dn < 0.6 && std::abs(row.c0 - a.c0) < 0.6 &&
          std::abs(row.T - a.T) < 0.8) {
        near_existing = true;
        break;
      }
    }
    if (!near_existing) seeds.push_back(row);
  }
  return seeds;
}

// Extra endpoint sweep for targets beyond the cached table horizon.
void far_seeds(const Pose& tgt, double t_need, std::vector<TableRow>& seeds) {
  std::mt19937_64 rng(0x7a61a5ULL);
  std::uniform_real_distribution<double> jitter(0.15, 0.85);
  std::vector<std::pair<double, TableRow>> scored;
  const int n_nu = 24, n_c = 16, n_t = 48;
  for (int i = 0; i < n_nu; ++i) {
    for (int j = 0; j < n_c; ++j) {
      const double nu0 = (i + jitter(rng)) * (kFourPi / n_nu);
      const double c0 = -6.5 + (j + jitter(rng)) * (13.0 / n_c);
      const Geodesic g = make_geodesic(Pose{0, 0, 0}, PendulumState{nu0, c0});
      const double t_hi = std::min(t_need, cut_estimate(g));
      if (t_hi <= kTableTmax) continue;
      for (int m = 1; m <= n_t; ++m) {
        const double T = kTableTmax + (t_hi - kTableTmax) * m / n_t;
        const Pose p = geodesic_eval(g, T);
        const double dth = ang_dist(p.theta, tgt.theta);
        const double d2 = (p.x - tgt.x) * (p.x - tgt.x) +
                          (p.y - tgt.y) * (p.y - tgt.y) + dth * dth;
        scored.emplace_back(d2, TableRow{nu0, c0, T, p.x, p.y, p.theta});
      }
    }
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t s = 0; s < scored.size() && s < 6; ++s)
    seeds.push_back(scored[s].second);
}

Minimizer make_minimizer(const PendulumState& s0, double T, double residual,
                         const CutInfo& cut) {
  Minimizer m;
  m.s0 = s0;
  m.T = T;
  m.residual = residual;
  const Geodesic g = make_geodesic(Pose{0, 0, 0}, s0);
  m.cls = g.cls;
  const Pose p = geodesic_eval(g, T);
  m.endpoint = p;
  m.t_cut = cut.t_cut;
  if (g.cls != GeodesicClass::S && T > 0.0) m.cusp_ts = cusp_times(g, T);
  return m;
}

// Exact branches for targets on the rotation and line strata, where shooting
// is degenerate.
bool analytic_branch(const Pose& tgt, SolveReport& rep) {
  const double d_pos = std::hypot(tgt.x, tgt.y);
  const double th = wrap_2pi(tgt.theta);

  if (d_pos <= 1e-9) {
    if (std::abs(ang_dist(th, 0.0)) <= 1e-12) {
      // Trivial problem: zero-length curve.
      Minimizer m;
      m.s0 = PendulumState{kTwoPi, 0.0};
      m.T = 0.0;
      m.endpoint = Pose{0, 0, 0};
      m.residual = d_pos + std::abs(ang_dist(th, 0.0));
      m.cls = GeodesicClass::S;
      rep.minimizers.push_back(m);
      return true;
    }
    // Rotations in place: counterclockwise reaches th in length th,
    // clockwise in 2 pi - th. Both are optimal exactly at th = pi.
    const CutInfo no_cut;
    const double ccw = th, cw = kTwoPi - th;
    if (std::abs(ccw - cw) <= kTwinLengthTol) {
      rep.minimizers.push_back(
          make_minimizer(PendulumState{kTwoPi, 0.0}, ccw, d_pos, no_cut));
      rep.minimizers.push_back(
          make_minimizer(PendulumState{0.0, 0.0}, cw, d_pos, no_cut));
    } else if (ccw < cw) {
      rep.minimizers.push_back(
          make_minimizer(PendulumState{kTwoPi, 0.0}, ccw, d_pos, no_cut));
    } else {
      rep.minimizers.push_back(
          make_minimizer(PendulumState{0.0, 0.0}, cw, d_pos, no_cut));
    }
    return true;
  }

  if (std::abs(tgt.y) <= 1e-9 && std::abs(ang_dist(th, 0.0)) <= 1e-9) {
    // Straight line along the x-axis, forward or backward.
    const CutInfo no_cut;
    const double nu0 = tgt.x > 0.0 ? kPi : 3.0 * kPi;
    rep.minimizers.push_back(
        make_minimizer(PendulumState{nu0, 0.0}, std::abs(tgt.x),
                       std::abs(tgt.y) + std::abs(ang_dist(th, 0.0)), no_cut));
    return true;
  }
  return false;
}

char twin_relation_of(const Minimizer& a, const Minimizer& b) {
  const Geodesic ga = make_geodesic(Pose{0, 0, 0}, a.s0);
  const PendulumState at_T = pendulum_at(ga, a.T);
  const auto state_gap = [](const PendulumState& u, const PendulumState& v) {
    double dn = std::abs(wrap_4pi(u.nu) - wrap_4pi(v.nu));
    dn = std::min(dn, kFourPi - dn);
    return dn + std::abs(u.c - v.c);
  };
  if (state_gap(reflected_state_S(at_T), b.s0) < 1e-5) return 'S';
  if (state_gap(reflected_state_T(at_T), b.s0) < 1e-5) return 'T';
  return 0;
}

}  // namespace

Pose normalize_to_origin(const Pose& start, const Pose& target) {
  const double cs = std::cos(start.theta), ss = std::sin(start.theta);
  const double dx = target.x - start.x, dy = target.y - start.y;
  return Pose{cs * dx + ss * dy, -ss * dx + cs * dy,
              wrap_2pi(target.theta - start.theta)};
}

Pose reduce_xi(const Pose& target, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi))
    throw Error(ErrorCode::InvalidArgument, "xi must be positive and finite");
  return Pose{xi * target.x, xi * target.y, wrap_2pi(target.theta)};
}

SolveReport solve_pmec(const Pose& target, double xi) {
  SolveReport rep;
  rep.xi = xi;
  rep.target = reduce_xi(target, xi);
  const Pose& tgt = rep.target;

  if (analytic_branch(tgt, rep)) {
    if (rep.minimizers.size() == 2)
      rep.twin_relation = twin_relation_of(rep.minimizers[0], rep.minimizers[1]);
    return rep;
  }

  // Multi-start shooting.
  std::vector<TableRow> seeds = pick_seeds(tgt, 14);
  const double t_need = std::hypot(tgt.x, tgt.y) + kPi + 1.0;
  if (t_need > kTableTmax) far_seeds(tgt, t_need, seeds);

  std::vector<Candidate> cands;
  double best_residual = kInf;
  for (const TableRow& s : seeds) {
    const Candidate c = refine(tgt, s.nu0, s.c0, s.T);
    best_residual = std::min(best_residual, c.residual);
    if (c.converged) cands.push_back(c);
  }
  if (cands.empty()) {
    // One denser retry before giving up.
    seeds = pick_seeds(tgt, 36);
    for (const TableRow& s : seeds) {
      const Candidate c = refine(tgt, s.nu0, s.c0, s.T);
      best_residual = std::min(best_residual, c.residual);
      if (c.converged) cands.push_back(c);
    }
  }
  if (cands.empty())
    throw Error(ErrorCode::NoConvergence,
                "shooting failed to reach the target within tolerance; best "
                "endpoint residual " +
                    std::to_string(best_residual));

  // Deduplicate converged candidates.
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.T != b.T) return a.T < b.T;
    if (a.nu0 != b.nu0) return a.nu0 < b.nu0;
    return a.c0 < b.c0;
  });
  std::vector<Candidate> unique;
  for (const Candidate& c : cands) {
    bool dup = false;
    for (const Candidate& u : unique) {
      double dn = std::abs(c.nu0 - u.nu0);
      dn = std::min(dn, kFourPi - dn);
      if (std::abs(c.T - u.T) < 1e-6 && dn < 1e-5 && std::abs(c.c0 - u.c0) < 1e-5) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(c);
  }

  // Keep globally optimal candidates only: ascending in T, a candidate is a
  // minimizer when it does not exceed its own cut time; ties within the twin
  // tolerance give the second minimizer.
  double best_T = kInf;
  for (const Candidate& c : unique) {
    if (c.T > best_T + kTwinLengthTol) break;
    const PendulumState s0{c.nu0, c.c0};
    const Geodesic g = make_geodesic(Pose{0, 0, 0}, s0);
    const CutInfo cut = cut_time(g);
    if (c.T > cut.t_cut + kCutSlack) continue;
    if (c.T < best_T) best_T = c.T;
    rep.minimizers.push_back(make_minimizer(s0, c.T, c.residual, cut));
    if (rep.minimizers.size() == 2) break;
  }
  if (rep.minimizers.empty())
    throw Error(ErrorCode::NoConvergence,
                "all shooting solutions exceeded their cut time");
  if (rep.minimizers.size() == 2)
    rep.twin_relation = twin_relation_of(rep.minimizers[0], rep.minimizers[1]);
  return rep;
}

ProjectiveReport solve_pprojective(const Pose& target, double xi) {
  ProjectiveReport out;
  out.direct = solve_pmec(target, xi);
  out.antipode =
      solve_pmec(Pose{target.x, target.y, target.theta + kPi}, xi);
  out.chosen = out.antipode.minimizers.front().T + kTwinLengthTol <
                       out.direct.minimizers.front().T
                   ? 1
                   : 0;

  // The other two lifts land on (-x, -y, ...) and are isometric images under
  // the half-turn (x, y, theta) -> (-x, -y, theta), which acts on initial
  // states as (nu0, c0) -> (-nu0 mod 4 pi, -c0). Verify the identification.
  const SolveReport& ref = out.chosen == 0 ? out.direct : out.antipode;
  const Minimizer& m = ref.minimizers.front();
  const PendulumState mapped{wrap_4pi(-m.s0.nu), -m.s0.c};
  const Pose img = geodesic_eval(
      make_geodesic(Pose{0, 0, 0}, mapped), m.T);
  out.pairing_residual =
      std::abs(img.x + ref.target.x) + std::abs(img.y + ref.target.y) +
      std::abs(ang_dist(img.theta, ref.target.theta));
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Exists:
      return "Exists";
    case Verdict::NoSolutionInternalCusp:
      return "NoSolutionInternalCusp";
    case Verdict::NoSolutionAngularCusp:
      return "NoSolutionAngularCusp";
  }
  return "?";
}

namespace {

struct CuspAnalysis {
  int internal = 0;
  bool marginal = false;
  bool forward = false;
};

CuspAnalysis analyze_minimizer(const Minimizer& m) {
  CuspAnalysis a;
  if (m.T <= 0.0) {
    a.forward = true;
    return a;
  }
  const Geodesic g = make_geodesic(Pose{0, 0, 0}, m.s0);
  if (g.cls == GeodesicClass::S) return a;  // handled as angular cusp

  std::vector<double> cusps = cusp_times(g, m.T + 1e-6);
  for (double t : cusps) {
    if (t > 1e-9 && t < m.T - 1e-9)
      ++a.internal;
    else
      a.marginal = true;  // at or just past an endpoint
  }
  // Near-cusp start or end states also make the verdict fragile.
  if (std::abs(std::sin(0.5 * m.s0.nu)) <= 1e-6) a.marginal = true;
  if (std::abs(std::sin(0.5 * pendulum_at(g, m.T).nu)) <= 1e-6)
    a.marginal = true;

  // Orientation of the planar traversal, probed away from possible cusps.
  double u_best = 0.0;
  for (double f : {0.25, 0.5, 0.75}) {
    const double u = std::sin(0.5 * pendulum_at(g, f * m.T).nu);
    if (std::abs(u) > std::abs(u_best)) u_best = u;
  }
  a.forward = u_best > 0.0;
  return a;
}

}  // namespace

ExistenceReport pcurve_existence(const Pose& target, double xi) {
  ExistenceReport rep;
  rep.solve = solve_pmec(target, xi);
  const std::vector<Minimizer>& ms = rep.solve.minimizers;

  // Pure rotation: positions coincide but headings differ; the planar trace
  // degenerates to a point, which the fixed-forward-speed problem cannot do.
  if (ms.front().cls == GeodesicClass::S) {
    if (ms.front().T <= 0.0) {
      rep.verdict = Verdict::Exists;
      rep.forward = true;
      return rep;
    }
    rep.verdict = Verdict::NoSolutionAngularCusp;
    return rep;
  }

  std::vector<CuspAnalysis> as;
  as.reserve(ms.size());
  for (const Minimizer& m : ms) as.push_back(analyze_minimizer(m));
  if (as.size() == 2)
    rep.twin_cusp_agreement = (as[0].internal > 0) == (as[1].internal > 0);

  // A solution exists when some minimizer is forward and cusp-free inside.
  int pick = -1;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].internal == 0 && as[i].forward) {
      pick = static_cast<int>(i);
      break;
    }
  }
  if (pick >= 0) {
    rep.verdict = Verdict::Exists;
    rep.boundary_marginal = as[static_cast<std::size_t>(pick)].marginal;
    rep.forward = true;
    rep.internal_cusps = 0;
    return rep;
  }
  rep.verdict = Verdict::NoSolutionInternalCusp;
  rep.internal_cusps = as.front().internal;
  rep.forward = as.front().forward;
  rep.boundary_marginal = as.front().marginal;
  return rep;
}

Atlas compute_atlas(double radius, int n) {
  if (!(radius > 0.0) || n < 2)
    throw Error(ErrorCode::InvalidArgument,
                "atlas needs a positive radius and at least a 2-grid");
  Atlas atlas;
  atlas.n = n;
  atlas.radius = radius;
  atlas.entries.resize(static_cast<std::size_t>(n) * n * n);

  auto index = [n](int ix, int iy, int ith) {
    return (static_cast<std::size_t>(ix) * n + iy) * n + ith;
  };
  auto coord = [radius, n](int i) { return -radius + (2 * i + 1) * radius / n; };

  std::vector<std::size_t> canonical;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ith = 0; ith < n; ++ith) {
        AtlasEntry& e = atlas.entries[index(ix, iy, ith)];
        e.ix = ix;
        e.iy = iy;
        e.ith = ith;
        e.target = Pose{coord(ix), coord(iy), kTwoPi * ith / n};
        e.in_disk = e.target.x * e.target.x + e.target.y * e.target.y <=
                    radius * radius;
        if (!e.in_disk) continue;
        const int miy = n - 1 - iy;
        const bool canon = iy > miy || (iy == miy && ith <= (n - ith) % n);
        if (canon) canonical.push_back(index(ix, iy, ith));
      }
    }
  }

  // Warm up shared lazy state before going parallel.
  (void)shooting_table();

  parallel_for(canonical.size(), [&](std::size_t k) {
    AtlasEntry& e = atlas.entries[canonical[k]];
    try {
      const ExistenceReport r = pcurve_existence(e.target, 1.0);
      e.solved = true;
      e.verdict = r.verdict;
      e.boundary_marginal = r.boundary_marginal;
      e.length = r.solve.minimizers.front().T;
      e.n_minimizers = static_cast<int>(r.solve.minimizers.size());
    } catch (const Error& err) {
      e.error = err.what();
    } catch (const std::exception& err) {
      e.error = err.what();
    }
  });

  // Mirror the lower half-plane: verdict(x, y, theta) = verdict(x, -y, -theta).
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const int miy = n - 1 - iy;
      for (int ith = 0; ith < n; ++ith) {
        AtlasEntry& e = atlas.entries[index(ix, iy, ith)];
        if (!e.in_disk) continue;
        const bool canon = iy > miy || (iy == miy && ith <= (n - ith) % n);
        if (canon) continue;
        const AtlasEntry& src = atlas.entries[index(ix, miy, (n - ith) % n)];
        e.solved = src.solved;
        e.verdict = src.verdict;
        e.boundary_marginal = src.boundary_marginal;
        e.length = src.length;
        e.n_minimizers = src.n_minimizers;
        e.error = src.error;
      }
    }
  }
  return atlas;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned n_threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SE2SR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) n_threads = static_cast<unsigned>(v);
  }
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += n_threads) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace se2sr
