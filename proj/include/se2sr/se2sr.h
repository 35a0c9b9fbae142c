/* se2sr: sub-Riemannian geodesics on SE(2).
 *
 * Closed-form evaluation of minimizing curves for the planar
 * translate-and-rotate metric, the two-point boundary solver, and the
 * reachability analysis for the fixed-forward-speed variant.
 *
 * Conventions: all angles are radians; headings returned through this API
 * are wrapped into [0, 2pi); lengths and parameters are arclengths. Every
 * function returns SE2SR_OK on success or a status code on failure, in
 * which case se2sr_last_error() carries a message and all out-parameters
 * are left untouched. Handles are freed with the matching *_free call;
 * freeing NULL is a no-op.
 */
#ifndef SE2SR_H
#define SE2SR_H

#include <stddef.h>

#if defined(_WIN32)
#define SE2SR_API __declspec(dllexport)
#else
#define SE2SR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define SE2SR_VERSION_MAJOR 1
#define SE2SR_VERSION_MINOR 0
#define SE2SR_VERSION_PATCH 0

typedef enum se2sr_status {
  SE2SR_OK = 0,
  SE2SR_ERR_DOMAIN = 1,            /* argument outside the mathematical domain */
  SE2SR_ERR_PRECONDITION = 2,      /* documented precondition violated */
  SE2SR_ERR_UNSUPPORTED_CLASS = 3, /* operation undefined for this class */
  SE2SR_ERR_INTEGRATION = 4,       /* adaptive integrator step underflow */
  SE2SR_ERR_NO_CONVERGENCE = 5,    /* iterative search exhausted its budget */
  SE2SR_ERR_INVALID_ARGUMENT = 6,  /* nonfinite value, bad count, null handle */
  SE2SR_ERR_INTERNAL = 7           /* invariant violated inside the library */
} se2sr_status;

/* Stable name of a status code, e.g. "no_convergence". */
SE2SR_API const char* se2sr_status_name(se2sr_status status);

/* Message of the most recent failing call on the calling thread; the empty
 * string when every call so far succeeded. The pointer stays valid until the
 * next failing call on the same thread. */
SE2SR_API const char* se2sr_last_error(void);

/* Library version as "major.minor.patch". */
SE2SR_API const char* se2sr_version(void);

/* Trajectory class of the vertical (pendulum) coordinates. */
typedef enum se2sr_class {
  SE2SR_CLASS_S = 0,   /* stable equilibrium: rotation in place */
  SE2SR_CLASS_U = 1,   /* unstable equilibrium: straight line */
  SE2SR_CLASS_R = 2,   /* rotating pendulum */
  SE2SR_CLASS_O = 3,   /* oscillating pendulum */
  SE2SR_CLASS_SEP = 4  /* separatrix */
} se2sr_class;

SE2SR_API const char* se2sr_class_name(se2sr_class cls);

typedef enum se2sr_verdict {
  SE2SR_EXISTS = 0,
  SE2SR_NO_SOLUTION_INTERNAL_CUSP = 1,
  SE2SR_NO_SOLUTION_ANGULAR_CUSP = 2
} se2sr_verdict;

SE2SR_API const char* se2sr_verdict_name(se2sr_verdict verdict);

typedef struct se2sr_geodesic se2sr_geodesic;
typedef struct se2sr_report se2sr_report;
typedef struct se2sr_atlas se2sr_atlas;

/* ---- Geodesics ---------------------------------------------------------- */

/* Geodesic through the pose (x, y, theta) with initial vertical coordinates
 * (nu0, c0); nu0 is taken on the double cover, modulo 4pi. */
SE2SR_API se2sr_status se2sr_geodesic_create(double x, double y, double theta,
                                             double nu0, double c0,
                                             se2sr_geodesic** out);

/* Same, from an initial covector (p1, p2, p3), which must satisfy
 * (p1 cos(theta) + p2 sin(theta))^2 + p3^2 = 1 to within 1e-9. */
SE2SR_API se2sr_status se2sr_geodesic_from_covector(double x, double y,
                                                    double theta, double p1,
                                                    double p2, double p3,
                                                    se2sr_geodesic** out);

SE2SR_API void se2sr_geodesic_free(se2sr_geodesic* g);

SE2SR_API se2sr_status se2sr_geodesic_class(const se2sr_geodesic* g,
                                            se2sr_class* out);

/* First integral c^2/2 - cos(nu) of the vertical flow. */
SE2SR_API se2sr_status se2sr_geodesic_energy(const se2sr_geodesic* g,
                                             double* out);

/* Period of the vertical coordinates on the double cover; +infinity for
 * equilibrium and separatrix states. */
SE2SR_API se2sr_status se2sr_geodesic_period(const se2sr_geodesic* g,
                                             double* out);

/* Parameter where the geodesic stops being a global minimizer; +infinity
 * when it never does (lines, rotations in place, separatrix states). */
SE2SR_API se2sr_status se2sr_geodesic_cut_time(const se2sr_geodesic* g,
                                               double* out);

/* Pose at arclength t >= 0 as {x, y, theta}. */
SE2SR_API se2sr_status se2sr_geodesic_eval(const se2sr_geodesic* g, double t,
                                           double pose_out[3]);

/* Vertical coordinates at arclength t, nu in [0, 4pi). */
SE2SR_API se2sr_status se2sr_geodesic_state(const se2sr_geodesic* g, double t,
                                            double* nu_out, double* c_out);

/* Signed curvature of the planar projection at arclength t; +-infinity at
 * cusp parameters. */
SE2SR_API se2sr_status se2sr_geodesic_curvature(const se2sr_geodesic* g,
                                                double t, double* out);

/* n >= 2 samples at uniform parameters on [0, t_max], written as n rows of
 * (t, x, y, theta, curvature) into out, which must hold 5*n doubles. */
SE2SR_API se2sr_status se2sr_geodesic_sample(const se2sr_geodesic* g,
                                             double t_max, size_t n,
                                             double* out);

/* Cusp parameters in the open interval (0, t_max), ascending. Writes up to
 * cap values into out and the total count into n_out; when the total exceeds
 * cap the first cap values are written and the call still succeeds. out may
 * be NULL when cap is 0. Rotations in place have no moving planar point and
 * report SE2SR_ERR_UNSUPPORTED_CLASS. */
SE2SR_API se2sr_status se2sr_geodesic_cusp_times(const se2sr_geodesic* g,
                                                 double t_max, double* out,
                                                 size_t cap, size_t* n_out);

/* Curvature zero crossings in (0, t_max), same buffer contract. Only
 * rotating states have any. */
SE2SR_API se2sr_status se2sr_geodesic_inflection_times(const se2sr_geodesic* g,
                                                       double t_max,
                                                       double* out, size_t cap,
                                                       size_t* n_out);

/* ---- Boundary solver ----------------------------------------------------- */

/* Minimizers from the identity pose to (x, y, theta) in the metric that
 * weights forward motion by xi > 0. One minimizer generically; two of equal
 * length on the symmetric set. */
SE2SR_API se2sr_status se2sr_solve(double x, double y, double theta, double xi,
                                   se2sr_report** out);

/* Shortest geodesic when the final heading is defined only up to a half
 * turn: both representatives theta and theta + pi are solved and the
 * shorter endpoint is reported. */
SE2SR_API se2sr_status se2sr_solve_projective(double x, double y, double theta,
                                              double xi, se2sr_report** out);

SE2SR_API void se2sr_report_free(se2sr_report* r);

/* Number of minimizers in the report (1 or 2), ascending by length. */
SE2SR_API se2sr_status se2sr_report_count(const se2sr_report* r, size_t* out);

/* Initial vertical coordinates and length of minimizer i. Any out-pointer
 * may be NULL. The curve itself is recovered with se2sr_geodesic_create at
 * the start pose. */
SE2SR_API se2sr_status se2sr_report_minimizer(const se2sr_report* r, size_t i,
                                              double* nu0_out, double* c0_out,
                                              double* length_out);

/* Endpoint defect |dx| + |dy| + d_angle of minimizer i. */
SE2SR_API se2sr_status se2sr_report_residual(const se2sr_report* r, size_t i,
                                             double* out);

SE2SR_API se2sr_status se2sr_report_class(const se2sr_report* r, size_t i,
                                          se2sr_class* out);

/* Cusp parameters strictly inside (0, length) of minimizer i; same buffer
 * contract as se2sr_geodesic_cusp_times. */
SE2SR_API se2sr_status se2sr_report_cusp_times(const se2sr_report* r, size_t i,
                                               double* out, size_t cap,
                                               size_t* n_out);

/* 'S' or 'T' when the report holds two minimizers exchanged by that
 * reflection, 0 otherwise. */
SE2SR_API se2sr_status se2sr_report_twin_relation(const se2sr_report* r,
                                                  char* out);

/* Target pose the solver actually reached, in the unit-weight problem the
 * input reduces to. For projective reports the heading is the chosen
 * representative. */
SE2SR_API se2sr_status se2sr_report_target(const se2sr_report* r,
                                           double pose_out[3]);

/* Projective reports only: endpoint defect of the half-turn identification
 * pairing the two remaining lifts, and which representative won (0 for
 * theta, 1 for theta + pi). Plain reports return SE2SR_ERR_PRECONDITION. */
SE2SR_API se2sr_status se2sr_report_projective(const se2sr_report* r,
                                               int* chosen_out,
                                               double* pairing_residual_out);

/* ---- Reachability ------------------------------------------------------- */

/* Decides whether the fixed-forward-speed problem can reach (x, y, theta)
 * from the identity: the shortest relaxed minimizer must run forward with no
 * direction reversal strictly between the endpoints. marginal_out (optional)
 * is set to 1 when a reversal sits within 1e-6 of an endpoint, so the
 * verdict is tolerance-sensitive. length_out (optional) receives the
 * relaxed minimizer's length. */
SE2SR_API se2sr_status se2sr_existence(double x, double y, double theta,
                                       double xi, se2sr_verdict* verdict_out,
                                       int* marginal_out, double* length_out);

/* ---- Existence atlas ----------------------------------------------------- */

typedef struct se2sr_atlas_cell {
  int ix, iy, ith;  /* grid indices, each in [0, n) */
  double x, y, theta;
  int in_disk;      /* 1 when x^2 + y^2 <= radius^2 */
  int solved;       /* 1 when the solver produced a verdict for this cell */
  int verdict;      /* se2sr_verdict, meaningful when solved */
  int marginal;     /* boundary-marginal flag, meaningful when solved */
  double length;    /* relaxed minimizer length; +infinity when not solved */
} se2sr_atlas_cell;

/* Existence sweep over an n x n x n grid: positions at the cell midpoints of
 * [-radius, radius]^2 restricted to the disk, headings at 2pi j / n.
 * Individual cell failures are recorded in the cell, not raised. Honors the
 * SE2SR_THREADS environment variable. */
SE2SR_API se2sr_status se2sr_atlas_run(double radius, int n, se2sr_atlas** out);

SE2SR_API void se2sr_atlas_free(se2sr_atlas* a);

SE2SR_API se2sr_status se2sr_atlas_grid(const se2sr_atlas* a, int* n_out,
                                        double* radius_out);

/* Total number of cells, n^3, ordered lexicographically in (ix, iy, ith). */
SE2SR_API se2sr_status se2sr_atlas_count(const se2sr_atlas* a, size_t* out);

SE2SR_API se2sr_status se2sr_atlas_cell_at(const se2sr_atlas* a, size_t i,
                                           se2sr_atlas_cell* out);

/* Failure message of cell i; the empty string when the cell solved or lies
 * outside the disk. Valid until the atlas is freed. */
SE2SR_API se2sr_status se2sr_atlas_cell_error(const se2sr_atlas* a, size_t i,
                                              const char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SE2SR_H */
