// Closed-form sub-Riemannian geodesics on SE(2), parametrised by arclength.
// A geodesic is held as a base pose plus the initial pendulum state; poses,
// pendulum states along the curve, curvature, cusp and inflection times are
// all evaluated through Jacobi elliptic functions without any integration.
#pragma once

#include <vector>

#include "core/types.hpp"

namespace se2sr {

struct Geodesic {
  Pose base;          // world pose at t = 0
  PendulumState s0;   // initial vertical coordinates, nu in [0, 4 pi)
  GeodesicClass cls;
  EllipticParams par;  // meaningful for classes O, R, Sep

  // Cached kernel values at the starting phase.
  double K = 0.0;      // complete integral at par.k
  double w0 = 0.0;     // Jacobi argument at t = 0 (par.phi / par.k for R)
  double sn0 = 0.0, cn0 = 0.0, dn0 = 0.0;
  double eps0 = 0.0;   // jacobi_epsilon at w0
  double am0 = 0.0;    // jacobi_am at w0 (class O), gd(phi) for Sep
  double line_rate = 0.0;  // classes S and U: signed unit rate of the line
};

struct CurveSample {
  double t = 0.0;
  Pose pose;
  double curvature = 0.0;
};

Geodesic make_geodesic(const Pose& base, const PendulumState& s0);

// Pose at arclength t, heading wrapped to [0, 2 pi).
Pose geodesic_eval(const Geodesic& g, double t);
// Same pose with the heading accumulated continuously from base.theta.
PoseU geodesic_eval_unwrapped(const Geodesic& g, double t);

// Vertical coordinates (nu, c) transported to arclength t.
PendulumState pendulum_at(const Geodesic& g, double t);

// Signed curvature -cos(nu/2)/sin(nu/2) of the planar projection; returns
// +-infinity with the sign of -cos(nu/2) when sin(nu/2) vanishes (cusp).
double curvature_of(const PendulumState& s);

// Geodesic through `base` with initial covector p on the level H = 1/2.
Pose exponential_map(const Pose& base, const Covector& p, double t);

// Strictly increasing cusp times in the open interval (0, t_max): parameters
// where sin(nu/2) changes sign and the planar velocity reverses. Class S has
// no horizontal motion and is rejected with ErrorCode::UnsupportedClass.
std::vector<double> cusp_times(const Geodesic& g, double t_max);

// Inflection times in (0, t_max): parameters where the signed curvature
// crosses zero, which happens for rotating states only.
std::vector<double> inflection_times(const Geodesic& g, double t_max);

// n >= 2 poses with curvature at uniform parameters on [0, t_max].
std::vector<CurveSample> sample_curve(const Geodesic& g, double t_max, int n);

}  // namespace se2sr
