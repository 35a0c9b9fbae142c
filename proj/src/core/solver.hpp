// Two-point boundary-value solver: multi-start shooting over a precomputed
// endpoint table, Gauss-Newton refinement of (nu0, c0, T), optimality
// filtering by cut time, dilation reduction to unit xi, the projective
// four-point lift, existence analysis for the fixed-forward-speed problem,
// and the existence atlas over a disk of targets.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/geodesic.hpp"
#include "core/types.hpp"

namespace se2sr {

// Target pose expressed in the frame of the start pose: start^{-1} * target.
Pose normalize_to_origin(const Pose& start, const Pose& target);

// Maps a target of the xi-weighted problem to the equivalent unit-weight
// problem by scaling positions: (x, y, theta) -> (xi x, xi y, theta).
// Lengths agree; curves pull back by dividing positions by xi.
Pose reduce_xi(const Pose& target, double xi);

struct Minimizer {
  PendulumState s0;          // initial state, origin frame, unit problem
  double T = 0.0;            // arclength = cost (equals the xi-problem cost)
  Pose endpoint;             // achieved endpoint in the unit problem
  double residual = kInf;    // |dx| + |dy| + angular gap at the endpoint
  GeodesicClass cls = GeodesicClass::S;
  double t_cut = kInf;
  std::vector<double> cusp_ts;  // cusp times in (0, T)
};

struct SolveReport {
  Pose target;               // unit-problem target actually solved
  double xi = 1.0;
  std::vector<Minimizer> minimizers;  // ascending length; size 1 or 2
  char twin_relation = 0;    // 'S' or 'T' when two minimizers are reflections
};

// Minimizers from the identity pose to `target` in the xi-weighted metric.
SolveReport solve_pmec(const Pose& target, double xi = 1.0);

struct ProjectiveReport {
  SolveReport direct;        // to (x, y, theta)
  SolveReport antipode;      // to (x, y, theta + pi)
  int chosen = 0;            // index of the shorter report: 0 direct, 1 antipode
  double pairing_residual = kInf;  // endpoint defect of the half-turn isometry
                                   // that identifies the other two lifts
};

// Shortest geodesic when the final heading is defined only up to pi.
ProjectiveReport solve_pprojective(const Pose& target, double xi = 1.0);

enum class Verdict { Exists, NoSolutionInternalCusp, NoSolutionAngularCusp };
const char* verdict_name(Verdict v);

struct ExistenceReport {
  Verdict verdict = Verdict::NoSolutionInternalCusp;
  bool boundary_marginal = false;  // a cusp sits within 1e-6 of an endpoint
  bool forward = false;            // deciding minimizer traverses forward
  int internal_cusps = 0;          // of the deciding minimizer
  bool twin_cusp_agreement = true; // both minimizers agree on internal cusps
  SolveReport solve;
};

// Decides whether the fixed-forward-speed problem reaching `target` admits a
// solution: the shortest relaxed minimizer must be forward and free of cusps
// strictly inside (0, T); cusps at the endpoints are permitted.
ExistenceReport pcurve_existence(const Pose& target, double xi = 1.0);

struct AtlasEntry {
  int ix = 0, iy = 0, ith = 0;
  Pose target;
  bool in_disk = false;
  bool solved = false;
  Verdict verdict = Verdict::NoSolutionInternalCusp;
  bool boundary_marginal = false;
  double length = kInf;
  int n_minimizers = 0;
  std::string error;         // failure reason when in_disk && !solved
};

struct Atlas {
  int n = 0;
  double radius = 0.0;
  std::vector<AtlasEntry> entries;  // lexicographic in (ix, iy, ith)
};

// Existence sweep over the centred n x n x n grid: positions at cell
// midpoints of [-radius, radius]^2 restricted to the disk, headings at
// 2 pi j / n. The lower half-plane is filled from the upper half via the
// exact mirror isometry (x, y, theta) -> (x, -y, -theta). Per-target
// failures are recorded in the entry and the sweep continues.
Atlas compute_atlas(double radius, int n);

// Runs fn(i) for i in [0, n) on SE2SR_THREADS threads (default: hardware).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace se2sr
