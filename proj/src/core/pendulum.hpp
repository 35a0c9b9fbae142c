// Covector-cylinder coordinates, pendulum energy and classification, period
// formulas, and the fit of closed-form elliptic parameters.
#pragma once

#include "core/types.hpp"

namespace se2sr {

// Maps an on-level covector at heading theta to pendulum coordinates:
// sin(nu/2) = p1 cos(theta) + p2 sin(theta), cos(nu/2) = -p3,
// c = 2 (p2 cos(theta) - p1 sin(theta)), nu wrapped into [0, 4pi).
// Requires |2H - 1| <= 1e-9 where 2H = (p1 cos + p2 sin)^2 + p3^2.
PendulumState covector_to_pendulum(double theta, const Covector& p);

// Inverse map; the returned covector always lies exactly on the level 2H = 1.
Covector pendulum_to_covector(double theta, const PendulumState& s);

// First integral of the pendulum flow nu' = c, c' = -sin(nu).
double energy(const PendulumState& s);

// Five-way classification, with a tolerance band kClassTol on the equality
// tests: S (stable equilibrium), U (unstable equilibrium), Sep (separatrix),
// O (oscillating, -1 < E < 1), R (rotating, E > 1).
GeodesicClass classify(const PendulumState& s);

// Modulus of the closed-form trajectory. Class O: k^2 = (1+E)/2 computed in
// the cancellation-free form c^2/4 + sin^2(nu/2); class R: the reciprocal.
double modulus_for(const PendulumState& s, GeodesicClass cls);

// Period of the pendulum motion on the covector cylinder (double cover of the
// phase cylinder): 4 K(k) for class O, 4 k K(k) for class R (one full 4 pi
// advance of nu), +inf for S, U, Sep.
double pendulum_period(const PendulumState& s);

// Phase and sign factors such that the closed form of the matching class
// starts exactly at s when evaluated at t = 0. Errors with UnsupportedClass
// for S and U, whose trajectories need no elliptic parameters.
EllipticParams fit_elliptic_params(const PendulumState& s);

}  // namespace se2sr
