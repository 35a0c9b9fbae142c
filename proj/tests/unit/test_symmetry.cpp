#include "doctest.h"

#include <cmath>
#include <random>

#include "core/geodesic.hpp"
#include "core/optimality.hpp"
#include "core/pendulum.hpp"
#include "core/symmetry.hpp"
#include "core/types.hpp"

using se2sr::Geodesic;
using se2sr::GeodesicClass;
using se2sr::PendulumState;
using se2sr::Pose;
using se2sr::PoseU;
using se2sr::TrajectorySegment;

namespace {
constexpr double kPi = 3.14159265358979323846;

double seg_gap(const TrajectorySegment& a, const TrajectorySegment& b) {
  REQUIRE(a.poses.size() == b.poses.size());
  double worst = 0.0;
  for (size_t i = 0; i < a.poses.size(); ++i) {
    worst = std::max(worst, std::abs(a.poses[i].x - b.poses[i].x));
    worst = std::max(worst, std::abs(a.poses[i].y - b.poses[i].y));
    worst = std::max(worst, se2sr::ang_dist(a.poses[i].theta, b.poses[i].theta));
  }
  return worst;
}

PendulumState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dnu(0.0, 4.0 * kPi);
  std::uniform_real_distribution<double> dc(-4.0, 4.0);
  return PendulumState{dnu(rng), dc(rng)};
}
}  // namespace

TEST_CASE("reflections preserve the start pose and are involutions") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> dT(0.5, 8.0);
  for (int i = 0; i < 100; ++i) {
    const Geodesic g = se2sr::make_geodesic(Pose{0.3, -0.8, 1.2}, random_state(rng));
    const double T = dT(rng);
    const TrajectorySegment seg = se2sr::segment_of(g, T, 128);
    for (auto reflect : {se2sr::reflect_S, se2sr::reflect_T}) {
      const TrajectorySegment r = reflect(seg);
      CHECK(std::abs(r.poses.front().x - seg.poses.front().x) <= 1e-12);
      CHECK(std::abs(r.poses.front().y - seg.poses.front().y) <= 1e-12);
      CHECK(se2sr::ang_dist(r.poses.front().theta, seg.poses.front().theta) <= 1e-12);
      CHECK(seg_gap(reflect(r), seg) <= 1e-12);
    }
  }
}

TEST_CASE("reflections act on the trivial motions as expected") {
  // Both reflections send a straight segment to its reversed traversal: the
  // image runs backwards along the same line, so no rival appears.
  const Geodesic line = se2sr::make_geodesic(Pose{0, 0, 0}, PendulumState{kPi, 0.0});
  const TrajectorySegment seg = se2sr::segment_of(line, 3.0, 64);
  for (auto reflect : {se2sr::reflect_S, se2sr::reflect_T}) {
    const TrajectorySegment r = reflect(seg);
    for (size_t i = 0; i < r.poses.size(); ++i) {
      const double t = seg.ts[i];
      CHECK(std::abs(r.poses[i].x + t) <= 1e-12);
      CHECK(std::abs(r.poses[i].y) <= 1e-12);
      CHECK(se2sr::ang_dist(r.poses[i].theta, 0.0) <= 1e-12);
    }
  }
  // The in-place rotation is fixed by S and reversed in spin by T; at
  // exactly a half turn the reversed spin reaches the same endpoint, which is
  // the twin pair behind the (0, 0, pi) target.
  const Geodesic spin = se2sr::make_geodesic(Pose{0, 0, 0}, PendulumState{0.0, 0.0});
  const TrajectorySegment sspin = se2sr::segment_of(spin, 2.0, 64);
  CHECK(seg_gap(se2sr::reflect_S(sspin), sspin) <= 1e-12);
  const TrajectorySegment tspin = se2sr::reflect_T(sspin);
  for (size_t i = 0; i < tspin.poses.size(); ++i) {
    CHECK(std::abs(tspin.poses[i].theta + sspin.poses[i].theta) <= 1e-12);
  }
  const TrajectorySegment half = se2sr::segment_of(spin, kPi, 64);
  const TrajectorySegment thalf = se2sr::reflect_T(half);
  CHECK(se2sr::ang_dist(thalf.poses.back().theta, half.poses.back().theta) <= 1e-12);
  CHECK(se2sr::is_maxwell_point(spin, kPi, 1e-9));
}

TEST_CASE("reflected segments are geodesic segments") {
  // The reflected curve must coincide with the geodesic freshly grown from
  // the reflected initial pendulum state at the same start pose.
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> dT(0.5, 6.0);
  for (int i = 0; i < 40; ++i) {
    const PendulumState s0 = random_state(rng);
    const Geodesic g = se2sr::make_geodesic(Pose{0, 0, 0}, s0);
    const double T = dT(rng);
    const TrajectorySegment seg = se2sr::segment_of(g, T, 256);
    const PendulumState at_T = se2sr::pendulum_at(g, T);

    const TrajectorySegment rs = se2sr::reflect_S(seg);
    const Geodesic gs = se2sr::make_geodesic(
        se2sr::wrap_pose(rs.poses.front()), se2sr::reflected_state_S(at_T));
    const TrajectorySegment grown_s = se2sr::segment_of(gs, T, 256);
    CHECK(seg_gap(rs, grown_s) <= 1e-7);

    const TrajectorySegment rt = se2sr::reflect_T(seg);
    const Geodesic gt = se2sr::make_geodesic(
        se2sr::wrap_pose(rt.poses.front()), se2sr::reflected_state_T(at_T));
    const TrajectorySegment grown_t = se2sr::segment_of(gt, T, 256);
    CHECK(seg_gap(rt, grown_t) <= 1e-7);
  }
}

TEST_CASE("reflections preserve length") {
  // Arclength of a sampled segment by chordal sums in (x, y, theta); the
  // reflected polyline must measure the same.
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> dT(1.0, 5.0);
  auto measure = [](const TrajectorySegment& s) {
    double len = 0.0;
    for (size_t i = 1; i < s.poses.size(); ++i) {
      const double dx = s.poses[i].x - s.poses[i - 1].x;
      const double dy = s.poses[i].y - s.poses[i - 1].y;
      const double dth = s.poses[i].theta - s.poses[i - 1].theta;
      len += std::sqrt(dx * dx + dy * dy + dth * dth);
    }
    return len;
  };
  for (int i = 0; i < 25; ++i) {
    const Geodesic g = se2sr::make_geodesic(Pose{0, 0, 0}, random_state(rng));
    const TrajectorySegment seg = se2sr::segment_of(g, dT(rng), 2048);
    CHECK(std::abs(measure(se2sr::reflect_S(seg)) - measure(seg)) <= 1e-9);
    CHECK(std::abs(measure(se2sr::reflect_T(seg)) - measure(seg)) <= 1e-9);
  }
}

TEST_CASE("maxwell test on known configurations") {
  // Straight lines never meet a rival of equal length.
  const Geodesic line = se2sr::make_geodesic(Pose{0, 0, 0}, PendulumState{kPi, 0.0});
  CHECK(!se2sr::is_maxwell_point(line, 10.0, 1e-8));

  // Oscillating states hit their first rival at t = half the nu-period.
  const Geodesic osc = se2sr::make_geodesic(Pose{0, 0, 0}, PendulumState{kPi / 2, 0.0});
  const double half = 0.5 * se2sr::pendulum_period(osc.s0);
  CHECK(se2sr::is_maxwell_point(osc, half, 1e-6));
  CHECK(!se2sr::is_maxwell_point(osc, 0.6 * half, 1e-8));

  // Rotating states: below the first cusp nothing coincides; the cut search
  // in optimality.cpp locates the genuine first root, which must pass here.
  const Geodesic rot = se2sr::make_geodesic(Pose{0, 0, 0}, PendulumState{0.0, 3.0});
  const double first_cusp = se2sr::first_cusp_time(rot);
  CHECK(!se2sr::is_maxwell_point(rot, 0.9 * first_cusp, 1e-8));
  const se2sr::CutInfo cut = se2sr::cut_time(rot);
  CHECK(se2sr::is_maxwell_point(rot, cut.t_cut, 1e-6));
  CHECK(!se2sr::is_maxwell_point(rot, 0.97 * cut.t_cut, 1e-8));
}

TEST_CASE("maxwell check reports residual and separation coherently") {
  const Geodesic osc = se2sr::make_geodesic(Pose{0, 0, 0}, PendulumState{kPi / 2, 0.0});
  const double half = 0.5 * se2sr::pendulum_period(osc.s0);
  const se2sr::MaxwellCheck mc = se2sr::maxwell_check(osc, half, 1e-6, 512);
  // At the oscillating half period the T reflection preserves the endpoint
  // and the image differs from the original curve.
  CHECK(mc.t_coincident);
  CHECK(mc.t_distinct);
  CHECK(mc.t_residual <= 1e-6);
  CHECK(mc.t_separation > 1e-6);
}
