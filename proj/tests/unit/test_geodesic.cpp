#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "core/geodesic.hpp"
#include "core/oracle.hpp"
#include "core/pendulum.hpp"
#include "core/types.hpp"

using se2sr::Covector;
using se2sr::Geodesic;
using se2sr::GeodesicClass;
using se2sr::PendulumState;
using se2sr::Pose;
using se2sr::PoseU;

namespace {
constexpr double kPi = 3.14159265358979323846;

Geodesic from_origin(double nu, double c) {
  return se2sr::make_geodesic(Pose{0.0, 0.0, 0.0}, PendulumState{nu, c});
}

// Sup distance between the closed form and the integrated reference on a grid.
double sup_gap(const Geodesic& g, double t_max, int n) {
  const se2sr::OracleTrajectory tr = se2sr::oracle_integrate(g.s0, t_max);
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = t_max * i / n;
    const PoseU p = se2sr::geodesic_eval_unwrapped(g, t);
    const std::array<double, 5> s = tr.at(t);
    worst = std::max(worst, std::abs(p.x - s[2]));
    worst = std::max(worst, std::abs(p.y - s[3]));
    worst = std::max(worst, std::abs(p.theta - s[4]));
  }
  return worst;
}
}  // namespace

TEST_CASE("closed form at the explicit endpoints") {
  // Straight line: nu = pi, c = 0 -> (t, 0, 0).
  const Pose line = se2sr::geodesic_eval(from_origin(kPi, 0.0), 2.0);
  CHECK(std::abs(line.x - 2.0) <= 1e-14);
  CHECK(std::abs(line.y) <= 1e-14);
  CHECK(std::abs(line.theta) <= 1e-14);
  // Pure rotation: nu = 0, c = 0 -> heading -t.
  const Pose spin = se2sr::geodesic_eval(from_origin(0.0, 0.0), kPi / 3);
  CHECK(std::abs(spin.x) <= 1e-14);
  CHECK(std::abs(spin.y) <= 1e-14);
  CHECK(std::abs(se2sr::ang_dist(spin.theta, -kPi / 3)) <= 1e-12);
}

TEST_CASE("closed form matches the integrated flow for every class") {
  // One representative per class with nontrivial horizontal motion.
  CHECK(sup_gap(from_origin(0.0, 3.0), 10.0, 200) <= 1e-8);        // R
  CHECK(sup_gap(from_origin(kPi / 2, 0.0), 10.0, 200) <= 1e-8);    // O
  CHECK(sup_gap(from_origin(0.0, 2.0), 10.0, 200) <= 1e-8);        // Sep
  CHECK(sup_gap(from_origin(kPi, 0.0), 10.0, 200) <= 1e-8);        // U
  CHECK(sup_gap(from_origin(1.9, -2.7), 10.0, 200) <= 1e-8);       // R, c < 0
  CHECK(sup_gap(from_origin(2.0 * kPi - 0.4, 0.9), 10.0, 200) <= 1e-8);  // O
  CHECK(sup_gap(from_origin(3.0 * kPi / 2, -2.0 * std::cos(3.0 * kPi / 4)), 10.0,
                200) <= 1e-8);                                     // Sep branch
}

TEST_CASE("evaluation is equivariant under the base pose") {
  const Pose base{0.7, -1.3, 2.1};
  const PendulumState s0{1.1, 2.4};
  const Geodesic moved = se2sr::make_geodesic(base, s0);
  const Geodesic origin = se2sr::make_geodesic(Pose{0, 0, 0}, s0);
  for (double t = 0.0; t <= 6.0; t += 0.37) {
    const Pose a = se2sr::geodesic_eval(moved, t);
    const Pose b = se2sr::se2_mul(base, se2sr::geodesic_eval(origin, t));
    CHECK(std::abs(a.x - b.x) <= 1e-12);
    CHECK(std::abs(a.y - b.y) <= 1e-12);
    CHECK(se2sr::ang_dist(a.theta, b.theta) <= 1e-12);
  }
}

TEST_CASE("exponential map through covectors") {
  // p = (1, 0, 0) at the origin is the unit line along x.
  const Pose a = se2sr::exponential_map(Pose{0, 0, 0}, Covector{1, 0, 0}, 1.0);
  CHECK(std::abs(a.x - 1.0) <= 1e-12);
  CHECK(std::abs(a.y) <= 1e-12);
  CHECK(se2sr::ang_dist(a.theta, 0.0) <= 1e-12);
  // p = (0, 0, -1) spins in place by t... with theta' = -cos(nu/2) = p3 = -1.
  const Pose b = se2sr::exponential_map(Pose{0, 0, 0}, Covector{0, 0, -1}, 0.8);
  CHECK(std::abs(b.x) <= 1e-12);
  CHECK(std::abs(b.y) <= 1e-12);
  CHECK(se2sr::ang_dist(b.theta, -0.8) <= 1e-12);
  // Generic on-level covector (0.6^2 + 0.8^2 = 1 at theta = 0): the covector
  // route must agree with make_geodesic on the mapped state.
  const Covector pn{0.6, 1.7, -0.8};
  const PendulumState s = se2sr::covector_to_pendulum(0.0, pn);
  const Geodesic g = se2sr::make_geodesic(Pose{0, 0, 0}, s);
  for (double t = 0.3; t <= 3.0; t += 0.9) {
    const Pose via_p = se2sr::exponential_map(Pose{0, 0, 0}, pn, t);
    const Pose via_s = se2sr::geodesic_eval(g, t);
    CHECK(std::abs(via_p.x - via_s.x) <= 1e-12);
    CHECK(std::abs(via_p.y - via_s.y) <= 1e-12);
    CHECK(se2sr::ang_dist(via_p.theta, via_s.theta) <= 1e-12);
  }
}

TEST_CASE("negative arclength extends the curve backwards consistently") {
  // geodesic_eval accepts any real parameter; regrowing the geodesic from
  // the pose and state at -tau must land back on the base pose after +tau.
  const Geodesic g = from_origin(0.45, 2.9);
  for (double tau = 0.3; tau <= 2.5; tau += 0.55) {
    const Pose back = se2sr::geodesic_eval(g, -tau);
    const PendulumState s = se2sr::pendulum_at(g, -tau);
    const Geodesic regrown = se2sr::make_geodesic(back, s);
    const Pose home = se2sr::geodesic_eval(regrown, tau);
    CHECK(std::abs(home.x) <= 1e-10);
    CHECK(std::abs(home.y) <= 1e-10);
    CHECK(se2sr::ang_dist(home.theta, 0.0) <= 1e-10);
  }
  // The covector-facing entry point insists on forward arclength.
  CHECK_THROWS_AS(
      se2sr::exponential_map(Pose{0, 0, 0}, Covector{1, 0, 0}, -0.1),
      se2sr::Error);
  try {
    se2sr::exponential_map(Pose{0, 0, 0}, Covector{1, 0, 0}, -1.0);
    FAIL("expected a throw");
  } catch (const se2sr::Error& e) {
    CHECK(e.code() == se2sr::ErrorCode::InvalidArgument);
  }
}

TEST_CASE("transported pendulum state follows the flow") {
  const PendulumState starts[] = {{0.0, 3.0}, {kPi / 2, 0.0}, {0.0, 2.0}};
  for (const PendulumState& s0 : starts) {
    const Geodesic g = se2sr::make_geodesic(Pose{0, 0, 0}, s0);
    const se2sr::OracleTrajectory tr = se2sr::oracle_integrate(s0, 8.0);
    for (double t = 0.0; t <= 8.0; t += 0.61) {
      const PendulumState s = se2sr::pendulum_at(g, t);
      const std::array<double, 5> r = tr.at(t);
      CHECK(std::abs(se2sr::wrap_pi((s.nu - r[0]) / 2.0)) * 2.0 <= 1e-8);
      CHECK(std::abs(s.c - r[1]) <= 1e-8);
    }
  }
}

TEST_CASE("curvature values at reference angles") {
  CHECK(std::abs(se2sr::curvature_of(PendulumState{kPi, 0.0})) <= 1e-15);
  CHECK(std::abs(se2sr::curvature_of(PendulumState{kPi / 2, 0.0}) + 1.0) <= 1e-12);
  CHECK(std::isinf(se2sr::curvature_of(PendulumState{0.0, 1.0})));
  CHECK(se2sr::curvature_of(PendulumState{0.0, 1.0}) < 0.0);
  CHECK(std::abs(se2sr::curvature_of(PendulumState{1e-8, 1.0})) > 1e7);
}

TEST_CASE("cusp times: straight and circular motions have none") {
  CHECK(se2sr::cusp_times(from_origin(kPi, 0.0), 100.0).empty());
  CHECK_THROWS_AS(se2sr::cusp_times(from_origin(0.0, 0.0), 10.0), se2sr::Error);
}

TEST_CASE("cusp times of a rotating state: dual route and spacing") {
  const Geodesic g = from_origin(0.7, 3.0);
  const double t_max = 12.0;
  const std::vector<double> cusps = se2sr::cusp_times(g, t_max);
  REQUIRE(!cusps.empty());
  // Route one: every reported time zeroes sin(nu/2) of the integrated flow.
  const se2sr::OracleTrajectory tr = se2sr::oracle_integrate(g.s0, t_max);
  for (double tc : cusps) {
    CHECK(std::abs(std::sin(tr.at(tc)[0] / 2.0)) <= 1e-9);
  }
  // Route two: the integrated flow has no sign change of sin(nu/2) that the
  // closed form missed; count crossings on a fine grid.
  int crossings = 0;
  double prev = std::sin(tr.at(0.0)[0] / 2.0);
  for (int i = 1; i <= 24000; ++i) {
    const double t = t_max * i / 24000.0;
    const double cur = std::sin(tr.at(t)[0] / 2.0);
    if (prev != 0.0 && cur != 0.0 && (prev > 0) != (cur > 0)) ++crossings;
    prev = cur;
  }
  CHECK(crossings == static_cast<int>(cusps.size()));
  // Spacing: consecutive cusps of a rotating state are half a period apart.
  const double half = 0.5 * se2sr::pendulum_period(g.s0);
  for (size_t i = 1; i < cusps.size(); ++i) {
    CHECK(std::abs(cusps[i] - cusps[i - 1] - half) <= 1e-9);
  }
  // Strictly increasing, strictly inside (0, t_max).
  CHECK(cusps.front() > 0.0);
  CHECK(cusps.back() < t_max);
}

TEST_CASE("cusp times of an oscillating state have period spacing") {
  const Geodesic g = from_origin(kPi - 0.9, 0.0);
  const double period = se2sr::pendulum_period(g.s0);
  const std::vector<double> cusps = se2sr::cusp_times(g, 3.0 * period);
  // An oscillating swing crosses nu = 0 (mod 4 pi) twice per period.
  CHECK(cusps.size() >= 4);
  for (size_t i = 2; i < cusps.size(); ++i) {
    CHECK(std::abs(cusps[i] - cusps[i - 2] - period) <= 1e-8);
  }
  const se2sr::OracleTrajectory tr = se2sr::oracle_integrate(g.s0, 3.0 * period);
  for (double tc : cusps) {
    CHECK(std::abs(std::sin(tr.at(tc)[0] / 2.0)) <= 1e-8);
  }
}

TEST_CASE("separatrix motion has at most one cusp") {
  // nu0 = 7 pi / 2 with c0 = sqrt(2) runs along the separatrix towards
  // nu = 4 pi and crosses it once.
  const Geodesic g = from_origin(3.5 * kPi, std::sqrt(2.0));
  REQUIRE(g.cls == GeodesicClass::Sep);
  const std::vector<double> cusps = se2sr::cusp_times(g, 50.0);
  REQUIRE(cusps.size() == 1);
  const se2sr::OracleTrajectory tr = se2sr::oracle_integrate(g.s0, 2.0);
  CHECK(std::abs(std::sin(tr.at(cusps[0])[0] / 2.0)) <= 1e-8);
  // A separatrix branch moving away from its crossing never cusps.
  const Geodesic away = from_origin(0.0, 2.0);
  CHECK(se2sr::cusp_times(away, 50.0).empty());
}

TEST_CASE("inflections: only rotating states have them") {
  CHECK(se2sr::inflection_times(from_origin(kPi / 2, 0.0), 20.0).empty());
  CHECK(se2sr::inflection_times(from_origin(0.0, 2.0), 20.0).empty());
  CHECK(se2sr::inflection_times(from_origin(kPi, 0.0), 20.0).empty());

  const Geodesic g = from_origin(0.7, 3.0);
  const double t_max = 12.0;
  const std::vector<double> inf = se2sr::inflection_times(g, t_max);
  REQUIRE(!inf.empty());
  const se2sr::OracleTrajectory tr = se2sr::oracle_integrate(g.s0, t_max);
  for (double ti : inf) {
    CHECK(std::abs(std::cos(tr.at(ti)[0] / 2.0)) <= 1e-9);
  }
  // Cusps and inflections of a rotating state alternate strictly.
  const std::vector<double> cusps = se2sr::cusp_times(g, t_max);
  REQUIRE(inf.size() >= 2);
  std::vector<std::pair<double, int>> merged;
  for (double tc : cusps) merged.push_back({tc, 0});
  for (double ti : inf) merged.push_back({ti, 1});
  std::sort(merged.begin(), merged.end());
  for (size_t i = 1; i < merged.size(); ++i) {
    CHECK(merged[i].second != merged[i - 1].second);
  }
}

TEST_CASE("uniform sampling endpoints and trivial motions") {
  const std::vector<se2sr::CurveSample> line =
      se2sr::sample_curve(from_origin(kPi, 0.0), 1.0, 3);
  REQUIRE(line.size() == 3);
  CHECK(line[0].t == 0.0);
  CHECK(std::abs(line[1].t - 0.5) <= 1e-15);
  CHECK(std::abs(line[2].t - 1.0) <= 1e-15);
  CHECK(std::abs(line[1].pose.x - 0.5) <= 1e-14);
  CHECK(std::abs(line[2].pose.x - 1.0) <= 1e-14);
  for (const se2sr::CurveSample& s : line) {
    CHECK(std::abs(s.curvature) <= 1e-12);
  }
  const std::vector<se2sr::CurveSample> two =
      se2sr::sample_curve(from_origin(0.3, 2.9), 4.0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].t == 0.0);
  CHECK(std::abs(two[1].t - 4.0) <= 1e-15);
  CHECK_THROWS_AS(se2sr::sample_curve(from_origin(0.3, 2.9), 4.0, 1), se2sr::Error);
}

TEST_CASE("sampled curve has unit speed and consistent curvature") {
  const Geodesic g = from_origin(0.4, 2.8);
  const double h = 1e-5;
  for (double t = 0.2; t <= 6.0; t += 0.47) {
    const PoseU p = se2sr::geodesic_eval_unwrapped(g, t + h);
    const PoseU m = se2sr::geodesic_eval_unwrapped(g, t - h);
    const double dx = (p.x - m.x) / (2 * h);
    const double dy = (p.y - m.y) / (2 * h);
    const double dth = (p.theta - m.theta) / (2 * h);
    // Sub-Riemannian speed: planar speed^2 + turning rate^2 = 1.
    CHECK(std::abs(dx * dx + dy * dy + dth * dth - 1.0) <= 1e-6);
    // Planar signed curvature matches -cot(nu/2) when the speed is healthy.
    const double speed2 = dx * dx + dy * dy;
    if (speed2 > 0.1) {
      const PoseU p2 = se2sr::geodesic_eval_unwrapped(g, t + 2 * h);
      const PoseU m2 = se2sr::geodesic_eval_unwrapped(g, t - 2 * h);
      const double ddx = (p2.x - 2 * se2sr::geodesic_eval_unwrapped(g, t).x + m2.x) /
                         (4 * h * h);
      const double ddy = (p2.y - 2 * se2sr::geodesic_eval_unwrapped(g, t).y + m2.y) /
                         (4 * h * h);
      const double kappa =
          (dx * ddy - dy * ddx) / std::pow(speed2, 1.5);
      // The parametrized planar curvature is -cos(nu/2)/|sin(nu/2)|: on
      // backward arcs (sin(nu/2) < 0) it is the negated closed form.
      const PendulumState s = se2sr::pendulum_at(g, t);
      const double orient = std::sin(s.nu / 2.0) >= 0.0 ? 1.0 : -1.0;
      const double want = orient * se2sr::curvature_of(s);
      CHECK(std::abs(kappa - want) <= 1e-3 * std::max(1.0, std::abs(want)));
    }
  }
}
