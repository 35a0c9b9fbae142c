// Cut time of a geodesic: the parameter where it stops being a global
// length minimizer. Oscillating states lose optimality exactly at half the
// pendulum period, where the heading-flip reflection produces an equal-length
// competitor; rotating states lose it at the first endpoint-preserving chord
// reflection, located by a scalar root search inside the first period.
// Lines and separatrix states never lose optimality.
#pragma once

#include "core/geodesic.hpp"
#include "core/types.hpp"

namespace se2sr {

enum class CutMethod { HalfPeriod, MaxwellSearch, Infinite };

struct CutInfo {
  double t_cut = kInf;
  CutMethod method = CutMethod::Infinite;
  double t_cusp_first = kInf;   // first cusp time, +inf when none
  char maxwell_kind = 0;        // 'T' or 'S' reflection realizing the cut;
                                // 'C' when the reflection degenerates to the
                                // curve itself (conjugate-limit case)
  double maxwell_residual = kInf;  // endpoint mismatch of that reflection
};

CutInfo cut_time(const Geodesic& g);

// True when the segment [0, T] is globally optimal; equality T == t_cut is
// still optimal.
bool is_optimal(const Geodesic& g, double T);

// First positive cusp parameter, +inf when the curve has none.
double first_cusp_time(const Geodesic& g);

}  // namespace se2sr
