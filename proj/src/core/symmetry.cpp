#include "core/symmetry.hpp"

#include <algorithm>
#include <cmath>

namespace se2sr {
namespace {

constexpr double kDistinctFloor = 1e-6;

// Local coordinates of seg relative to its start pose: q0^{-1} * q(t), with
// the heading difference kept unwrapped.
std::vector<PoseU> to_local(const TrajectorySegment& seg) {
  const PoseU& q0 = seg.poses.front();
  const double c0 = std::cos(q0.theta), s0 = std::sin(q0.theta);
  std::vector<PoseU> local(seg.poses.size());
  for (std::size_t i = 0; i < seg.poses.size(); ++i) {
    const double dx = seg.poses[i].x - q0.x, dy = seg.poses[i].y - q0.y;
    local[i] = PoseU{c0 * dx + s0 * dy, -s0 * dx + c0 * dy,
                     seg.poses[i].theta - q0.theta};
  }
  return local;
}

TrajectorySegment from_local(const TrajectorySegment& seg,
                             std::vector<PoseU> local) {
  const PoseU& q0 = seg.poses.front();
  const double c0 = std::cos(q0.theta), s0 = std::sin(q0.theta);
  TrajectorySegment out;
  out.T = seg.T;
  out.ts = seg.ts;
  out.poses.resize(local.size());
  for (std::size_t i = 0; i < local.size(); ++i) {
    out.poses[i] = PoseU{q0.x + c0 * local[i].x - s0 * local[i].y,
                         q0.y + s0 * local[i].x + c0 * local[i].y,
                         q0.theta + local[i].theta};
  }
  return out;
}

enum class Kind { S, T };

TrajectorySegment reflect(const TrajectorySegment& seg, Kind kind) {
  if (seg.poses.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "segment needs at least 2 samples");
  const std::vector<PoseU> local = to_local(seg);
  const PoseU& qT = local.back();
  const double cT = std::cos(qT.theta), sT = std::sin(qT.theta);
  const std::size_t n = local.size();
  std::vector<PoseU> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PoseU& m = local[n - 1 - i];  // q(T - t)
    const double dx = m.x - qT.x, dy = m.y - qT.y;
    const double px = cT * dx + sT * dy;
    const double py = -sT * dx + cT * dy;
    if (kind == Kind::S)
      out[i] = PoseU{px, -py, qT.theta - m.theta};
    else
      out[i] = PoseU{px, py, m.theta - qT.theta};
  }
  return from_local(seg, std::move(out));
}

double endpoint_residual(const TrajectorySegment& a,
                         const TrajectorySegment& b) {
  const PoseU& p = a.poses.back();
  const PoseU& q = b.poses.back();
  return std::abs(p.x - q.x) + std::abs(p.y - q.y) +
         std::abs(ang_dist(p.theta, q.theta));
}

double sup_separation(const TrajectorySegment& a, const TrajectorySegment& b) {
  double sup = 0.0;
  for (std::size_t i = 0; i < a.poses.size(); ++i) {
    const PoseU& p = a.poses[i];
    const PoseU& q = b.poses[i];
    const double d = std::abs(p.x - q.x) + std::abs(p.y - q.y) +
                     std::abs(ang_dist(p.theta, q.theta));
    if (d > sup) sup = d;
  }
  return sup;
}

}  // namespace

TrajectorySegment segment_of(const Geodesic& g, double T, int n) {
  if (n < 2)
    throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  if (!(T > 0.0))
    throw Error(ErrorCode::InvalidArgument, "segment length must be positive");
  TrajectorySegment seg;
  seg.T = T;
  seg.ts.resize(static_cast<std::size_t>(n));
  seg.poses.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = T * i / (n - 1);
    seg.ts[static_cast<std::size_t>(i)] = t;
    seg.poses[static_cast<std::size_t>(i)] = geodesic_eval_unwrapped(g, t);
  }
  return seg;
}

TrajectorySegment reflect_S(const TrajectorySegment& seg) {
  return reflect(seg, Kind::S);
}

TrajectorySegment reflect_T(const TrajectorySegment& seg) {
  return reflect(seg, Kind::T);
}

PendulumState reflected_state_S(const PendulumState& at_T) {
  return PendulumState{wrap_4pi(-at_T.nu), at_T.c};
}

PendulumState reflected_state_T(const PendulumState& at_T) {
  return PendulumState{wrap_4pi(at_T.nu + kTwoPi), -at_T.c};
}

MaxwellCheck maxwell_check(const Geodesic& g, double T, double tol, int n) {
  const TrajectorySegment seg = segment_of(g, T, n);
  const TrajectorySegment rs = reflect_S(seg);
  const TrajectorySegment rt = reflect_T(seg);
  MaxwellCheck out;
  out.s_residual = endpoint_residual(seg, rs);
  out.t_residual = endpoint_residual(seg, rt);
  out.s_separation = sup_separation(seg, rs);
  out.t_separation = sup_separation(seg, rt);
  out.s_coincident = out.s_residual <= tol;
  out.t_coincident = out.t_residual <= tol;
  out.s_distinct = out.s_separation > kDistinctFloor;
  out.t_distinct = out.t_separation > kDistinctFloor;
  return out;
}

bool is_maxwell_point(const Geodesic& g, double T, double tol) {
  const MaxwellCheck c = maxwell_check(g, T, tol);
  return (c.s_coincident && c.s_distinct) || (c.t_coincident && c.t_distinct);
}

}  // namespace se2sr
