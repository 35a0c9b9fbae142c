// Ground-truth integration of the Hamiltonian system
//   nu' = c, c' = -sin(nu),
//   x' = sin(nu/2) cos(theta), y' = sin(nu/2) sin(theta), theta' = -cos(nu/2)
// with an adaptive Dormand-Prince 5(4) scheme and dense output. The heading
// is integrated unwrapped. This module deliberately shares no code with the
// closed-form evaluator it is used to check.
#pragma once

#include <array>
#include <vector>

#include "core/types.hpp"

namespace se2sr {

struct OracleTrajectory {
  // State order: (nu, c, x, y, theta).
  std::vector<double> times;                        // accepted step boundaries
  std::vector<std::array<double, 5>> states;        // states at times[i]
  std::vector<std::array<std::array<double, 5>, 5>> cont;  // dense coefficients
  double rtol = 0.0;
  double atol = 0.0;

  double t_end() const { return times.back(); }
  // Dense evaluation at any t in [0, t_end()], fourth-order interpolation.
  std::array<double, 5> at(double t) const;
};

// Integrates from pose (0,0,0) and pendulum state s0 up to t_max > 0.
// Local error per step is held near rtol = 1e-12; step-size underflow raises
// Error(ErrorCode::Integration) carrying the failure time.
OracleTrajectory oracle_integrate(const PendulumState& s0, double t_max,
                                  double rtol = 1e-12, double atol = 1e-13);

// Smallest t > 0 at which the pendulum state returns: for class O the state
// (nu, c) itself recurs; for class R the angle nu has advanced by 4 pi (one
// revolution of the double cover) with c recurring. Refined to 1e-10.
// Classes S, U, Sep raise Error(ErrorCode::UnsupportedClass).
double pendulum_return_time(const PendulumState& s0);

}  // namespace se2sr
