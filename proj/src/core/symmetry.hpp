// Endpoint reflections of geodesic segments and the Maxwell-point test.
// A segment q(t), t in [0, T], can be reflected through the midpoint
// symmetries of the pendulum; the reflected curve is again a geodesic with
// the same start point. When a reflection preserves the endpoint while
// producing a genuinely different curve, T is a Maxwell time and the segment
// stops being optimal there.
#pragma once

#include <vector>

#include "core/geodesic.hpp"
#include "core/types.hpp"

namespace se2sr {

struct TrajectorySegment {
  double T = 0.0;
  std::vector<double> ts;     // uniform grid, ts.front() = 0, ts.back() = T
  std::vector<PoseU> poses;   // world poses, heading unwrapped
};

// Samples g on [0, T] with n uniform points (n >= 2).
TrajectorySegment segment_of(const Geodesic& g, double T, int n = 512);

// Reflections about the segment's own chord frame. Both fix the start pose,
// reverse the traversal, and are involutions on segments.
TrajectorySegment reflect_S(const TrajectorySegment& seg);
TrajectorySegment reflect_T(const TrajectorySegment& seg);

// Initial pendulum states of the reflected geodesics, given the state of the
// original at time T. Used to cross-check that a reflected segment is itself
// a geodesic.
PendulumState reflected_state_S(const PendulumState& at_T);
PendulumState reflected_state_T(const PendulumState& at_T);

struct MaxwellCheck {
  double s_residual = kInf;    // endpoint mismatch after the S reflection
  double t_residual = kInf;    // endpoint mismatch after the T reflection
  double s_separation = 0.0;   // sup pose distance between curve and image
  double t_separation = 0.0;
  bool s_coincident = false;   // endpoint preserved within tol
  bool t_coincident = false;
  bool s_distinct = false;     // separation above the distinctness floor
  bool t_distinct = false;
};

MaxwellCheck maxwell_check(const Geodesic& g, double T, double tol,
                           int n = 512);

// True when some reflection fixes the endpoint within tol while the curves
// differ by more than the distinctness floor (1e-6 sup distance).
bool is_maxwell_point(const Geodesic& g, double T, double tol);

}  // namespace se2sr
