// C ABI over the se2sr core: opaque handles, status codes, and a per-thread
// error message. Exceptions never cross this boundary.
#include "se2sr/se2sr.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "core/geodesic.hpp"
#include "core/optimality.hpp"
#include "core/pendulum.hpp"
#include "core/solver.hpp"
#include "core/types.hpp"

struct se2sr_geodesic {
  se2sr::Geodesic g;
};

struct se2sr_report {
  se2sr::SolveReport solve;
  bool projective = false;
  int chosen = 0;
  double pairing_residual = 0.0;
};

struct se2sr_atlas {
  se2sr::Atlas atlas;
};

namespace {

thread_local std::string g_last_error;

se2sr_status status_of(se2sr::ErrorCode code) {
  switch (code) {
    case se2sr::ErrorCode::Domain: return SE2SR_ERR_DOMAIN;
    case se2sr::ErrorCode::Precondition: return SE2SR_ERR_PRECONDITION;
    case se2sr::ErrorCode::UnsupportedClass: return SE2SR_ERR_UNSUPPORTED_CLASS;
    case se2sr::ErrorCode::Integration: return SE2SR_ERR_INTEGRATION;
    case se2sr::ErrorCode::NoConvergence: return SE2SR_ERR_NO_CONVERGENCE;
    case se2sr::ErrorCode::InvalidArgument: return SE2SR_ERR_INVALID_ARGUMENT;
    case se2sr::ErrorCode::Internal: return SE2SR_ERR_INTERNAL;
  }
  return SE2SR_ERR_INTERNAL;
}

se2sr_status fail(se2sr_status status, const char* msg) {
  g_last_error = msg;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
se2sr_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const se2sr::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SE2SR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SE2SR_ERR_INTERNAL, e.what());
  }
}

se2sr_status require(bool ok, const char* msg) {
  return ok ? SE2SR_OK : fail(SE2SR_ERR_INVALID_ARGUMENT, msg);
}

template <typename... Ts>
se2sr_status require_finite(Ts... vs) {
  return require((std::isfinite(vs) && ...), "nonfinite numeric argument");
}

se2sr_class class_of(se2sr::GeodesicClass cls) {
  switch (cls) {
    case se2sr::GeodesicClass::S: return SE2SR_CLASS_S;
    case se2sr::GeodesicClass::U: return SE2SR_CLASS_U;
    case se2sr::GeodesicClass::R: return SE2SR_CLASS_R;
    case se2sr::GeodesicClass::O: return SE2SR_CLASS_O;
    case se2sr::GeodesicClass::Sep: return SE2SR_CLASS_SEP;
  }
  return SE2SR_CLASS_S;
}

se2sr_verdict verdict_of(se2sr::Verdict v) {
  switch (v) {
    case se2sr::Verdict::Exists: return SE2SR_EXISTS;
    case se2sr::Verdict::NoSolutionInternalCusp:
      return SE2SR_NO_SOLUTION_INTERNAL_CUSP;
    case se2sr::Verdict::NoSolutionAngularCusp:
      return SE2SR_NO_SOLUTION_ANGULAR_CUSP;
  }
  return SE2SR_NO_SOLUTION_INTERNAL_CUSP;
}

// Shared buffer contract for the *_times functions.
se2sr_status fill_times(const std::vector<double>& ts, double* out, size_t cap,
                        size_t* n_out) {
  if (se2sr_status s = require(n_out != nullptr, "n_out is null"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require(out != nullptr || cap == 0,
                               "out is null with nonzero capacity");
      s != SE2SR_OK)
    return s;
  *n_out = ts.size();
  const size_t m = ts.size() < cap ? ts.size() : cap;
  for (size_t i = 0; i < m; ++i) out[i] = ts[i];
  return SE2SR_OK;
}

se2sr_status make_report(se2sr_report* r, se2sr_report** out) {
  *out = r;
  return SE2SR_OK;
}

}  // namespace

extern "C" {

const char* se2sr_status_name(se2sr_status status) {
  switch (status) {
    case SE2SR_OK: return "ok";
    case SE2SR_ERR_DOMAIN: return "domain";
    case SE2SR_ERR_PRECONDITION: return "precondition";
    case SE2SR_ERR_UNSUPPORTED_CLASS: return "unsupported_class";
    case SE2SR_ERR_INTEGRATION: return "integration";
    case SE2SR_ERR_NO_CONVERGENCE: return "no_convergence";
    case SE2SR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SE2SR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* se2sr_last_error(void) { return g_last_error.c_str(); }

const char* se2sr_version(void) { return "1.0.0"; }

const char* se2sr_class_name(se2sr_class cls) {
  switch (cls) {
    case SE2SR_CLASS_S: return "S";
    case SE2SR_CLASS_U: return "U";
    case SE2SR_CLASS_R: return "R";
    case SE2SR_CLASS_O: return "O";
    case SE2SR_CLASS_SEP: return "Sep";
  }
  return "unknown";
}

const char* se2sr_verdict_name(se2sr_verdict verdict) {
  switch (verdict) {
    case SE2SR_EXISTS: return "Exists";
    case SE2SR_NO_SOLUTION_INTERNAL_CUSP: return "NoSolutionInternalCusp";
    case SE2SR_NO_SOLUTION_ANGULAR_CUSP: return "NoSolutionAngularCusp";
  }
  return "unknown";
}

se2sr_status se2sr_geodesic_create(double x, double y, double theta, double nu0,
                                   double c0, se2sr_geodesic** out) {
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(x, y, theta, nu0, c0); s != SE2SR_OK)
    return s;
  return guarded([&] {
    auto* h = new se2sr_geodesic{
        se2sr::make_geodesic(se2sr::Pose{x, y, theta},
                             se2sr::PendulumState{nu0, c0})};
    *out = h;
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_from_covector(double x, double y, double theta,
                                          double p1, double p2, double p3,
                                          se2sr_geodesic** out) {
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(x, y, theta, p1, p2, p3); s != SE2SR_OK)
    return s;
  return guarded([&] {
    const se2sr::PendulumState s0 =
        se2sr::covector_to_pendulum(theta, se2sr::Covector{p1, p2, p3});
    auto* h = new se2sr_geodesic{
        se2sr::make_geodesic(se2sr::Pose{x, y, theta}, s0)};
    *out = h;
    return SE2SR_OK;
  });
}

void se2sr_geodesic_free(se2sr_geodesic* g) { delete g; }

se2sr_status se2sr_geodesic_class(const se2sr_geodesic* g, se2sr_class* out) {
  if (se2sr_status s = require(g && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  *out = class_of(g->g.cls);
  return SE2SR_OK;
}

se2sr_status se2sr_geodesic_energy(const se2sr_geodesic* g, double* out) {
  if (se2sr_status s = require(g && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  *out = se2sr::energy(g->g.s0);
  return SE2SR_OK;
}

se2sr_status se2sr_geodesic_period(const se2sr_geodesic* g, double* out) {
  if (se2sr_status s = require(g && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  return guarded([&] {
    *out = se2sr::pendulum_period(g->g.s0);
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_cut_time(const se2sr_geodesic* g, double* out) {
  if (se2sr_status s = require(g && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  return guarded([&] {
    *out = se2sr::cut_time(g->g).t_cut;
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_eval(const se2sr_geodesic* g, double t,
                                 double pose_out[3]) {
  if (se2sr_status s = require(g && pose_out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(t); s != SE2SR_OK) return s;
  return guarded([&] {
    const se2sr::Pose p = se2sr::geodesic_eval(g->g, t);
    pose_out[0] = p.x;
    pose_out[1] = p.y;
    pose_out[2] = p.theta;
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_state(const se2sr_geodesic* g, double t,
                                  double* nu_out, double* c_out) {
  if (se2sr_status s = require(g != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(t); s != SE2SR_OK) return s;
  return guarded([&] {
    const se2sr::PendulumState st = se2sr::pendulum_at(g->g, t);
    if (nu_out) *nu_out = st.nu;
    if (c_out) *c_out = st.c;
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_curvature(const se2sr_geodesic* g, double t,
                                      double* out) {
  if (se2sr_status s = require(g && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(t); s != SE2SR_OK) return s;
  return guarded([&] {
    *out = se2sr::curvature_of(se2sr::pendulum_at(g->g, t));
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_sample(const se2sr_geodesic* g, double t_max,
                                   size_t n, double* out) {
  if (se2sr_status s = require(g && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  if (se2sr_status s = require(n >= 2 && n <= (size_t{1} << 30),
                               "sample count must be in [2, 2^30]");
      s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(t_max); s != SE2SR_OK) return s;
  return guarded([&] {
    const auto samples =
        se2sr::sample_curve(g->g, t_max, static_cast<int>(n));
    for (size_t i = 0; i < samples.size(); ++i) {
      out[5 * i + 0] = samples[i].t;
      out[5 * i + 1] = samples[i].pose.x;
      out[5 * i + 2] = samples[i].pose.y;
      out[5 * i + 3] = samples[i].pose.theta;
      out[5 * i + 4] = samples[i].curvature;
    }
    return SE2SR_OK;
  });
}

se2sr_status se2sr_geodesic_cusp_times(const se2sr_geodesic* g, double t_max,
                                       double* out, size_t cap,
                                       size_t* n_out) {
  if (se2sr_status s = require(g != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(t_max); s != SE2SR_OK) return s;
  return guarded(
      [&] { return fill_times(se2sr::cusp_times(g->g, t_max), out, cap, n_out); });
}

se2sr_status se2sr_geodesic_inflection_times(const se2sr_geodesic* g,
                                             double t_max, double* out,
                                             size_t cap, size_t* n_out) {
  if (se2sr_status s = require(g != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(t_max); s != SE2SR_OK) return s;
  return guarded([&] {
    return fill_times(se2sr::inflection_times(g->g, t_max), out, cap, n_out);
  });
}

se2sr_status se2sr_solve(double x, double y, double theta, double xi,
                         se2sr_report** out) {
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(x, y, theta, xi); s != SE2SR_OK)
    return s;
  return guarded([&] {
    auto* r = new se2sr_report;
    r->solve = se2sr::solve_pmec(se2sr::Pose{x, y, theta}, xi);
    return make_report(r, out);
  });
}

se2sr_status se2sr_solve_projective(double x, double y, double theta, double xi,
                                    se2sr_report** out) {
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(x, y, theta, xi); s != SE2SR_OK)
    return s;
  return guarded([&] {
    const se2sr::ProjectiveReport pr =
        se2sr::solve_pprojective(se2sr::Pose{x, y, theta}, xi);
    auto* r = new se2sr_report;
    r->solve = pr.chosen == 0 ? pr.direct : pr.antipode;
    r->projective = true;
    r->chosen = pr.chosen;
    r->pairing_residual = pr.pairing_residual;
    return make_report(r, out);
  });
}

void se2sr_report_free(se2sr_report* r) { delete r; }

se2sr_status se2sr_report_count(const se2sr_report* r, size_t* out) {
  if (se2sr_status s = require(r && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  *out = r->solve.minimizers.size();
  return SE2SR_OK;
}

static se2sr_status minimizer_at(const se2sr_report* r, size_t i,
                                 const se2sr::Minimizer** out) {
  if (se2sr_status s = require(r != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (i >= r->solve.minimizers.size())
    return fail(SE2SR_ERR_INVALID_ARGUMENT, "minimizer index out of range");
  *out = &r->solve.minimizers[i];
  return SE2SR_OK;
}

se2sr_status se2sr_report_minimizer(const se2sr_report* r, size_t i,
                                    double* nu0_out, double* c0_out,
                                    double* length_out) {
  const se2sr::Minimizer* m = nullptr;
  if (se2sr_status s = minimizer_at(r, i, &m); s != SE2SR_OK) return s;
  if (nu0_out) *nu0_out = m->s0.nu;
  if (c0_out) *c0_out = m->s0.c;
  if (length_out) *length_out = m->T;
  return SE2SR_OK;
}

se2sr_status se2sr_report_residual(const se2sr_report* r, size_t i,
                                   double* out) {
  const se2sr::Minimizer* m = nullptr;
  if (se2sr_status s = minimizer_at(r, i, &m); s != SE2SR_OK) return s;
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  *out = m->residual;
  return SE2SR_OK;
}

se2sr_status se2sr_report_class(const se2sr_report* r, size_t i,
                                se2sr_class* out) {
  const se2sr::Minimizer* m = nullptr;
  if (se2sr_status s = minimizer_at(r, i, &m); s != SE2SR_OK) return s;
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  *out = class_of(m->cls);
  return SE2SR_OK;
}

se2sr_status se2sr_report_cusp_times(const se2sr_report* r, size_t i,
                                     double* out, size_t cap, size_t* n_out) {
  const se2sr::Minimizer* m = nullptr;
  if (se2sr_status s = minimizer_at(r, i, &m); s != SE2SR_OK) return s;
  return fill_times(m->cusp_ts, out, cap, n_out);
}

se2sr_status se2sr_report_twin_relation(const se2sr_report* r, char* out) {
  if (se2sr_status s = require(r && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  *out = r->solve.twin_relation;
  return SE2SR_OK;
}

se2sr_status se2sr_report_target(const se2sr_report* r, double pose_out[3]) {
  if (se2sr_status s = require(r && pose_out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  pose_out[0] = r->solve.target.x;
  pose_out[1] = r->solve.target.y;
  pose_out[2] = r->solve.target.theta;
  return SE2SR_OK;
}

se2sr_status se2sr_report_projective(const se2sr_report* r, int* chosen_out,
                                     double* pairing_residual_out) {
  if (se2sr_status s = require(r != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (!r->projective)
    return fail(SE2SR_ERR_PRECONDITION,
                "report does not come from a projective solve");
  if (chosen_out) *chosen_out = r->chosen;
  if (pairing_residual_out) *pairing_residual_out = r->pairing_residual;
  return SE2SR_OK;
}

se2sr_status se2sr_existence(double x, double y, double theta, double xi,
                             se2sr_verdict* verdict_out, int* marginal_out,
                             double* length_out) {
  if (se2sr_status s = require(verdict_out != nullptr, "verdict_out is null");
      s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(x, y, theta, xi); s != SE2SR_OK)
    return s;
  return guarded([&] {
    const se2sr::ExistenceReport r =
        se2sr::pcurve_existence(se2sr::Pose{x, y, theta}, xi);
    *verdict_out = verdict_of(r.verdict);
    if (marginal_out) *marginal_out = r.boundary_marginal ? 1 : 0;
    if (length_out) *length_out = r.solve.minimizers.front().T;
    return SE2SR_OK;
  });
}

se2sr_status se2sr_atlas_run(double radius, int n, se2sr_atlas** out) {
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  if (se2sr_status s = require_finite(radius); s != SE2SR_OK) return s;
  return guarded([&] {
    auto* a = new se2sr_atlas{se2sr::compute_atlas(radius, n)};
    *out = a;
    return SE2SR_OK;
  });
}

void se2sr_atlas_free(se2sr_atlas* a) { delete a; }

se2sr_status se2sr_atlas_grid(const se2sr_atlas* a, int* n_out,
                              double* radius_out) {
  if (se2sr_status s = require(a != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (n_out) *n_out = a->atlas.n;
  if (radius_out) *radius_out = a->atlas.radius;
  return SE2SR_OK;
}

se2sr_status se2sr_atlas_count(const se2sr_atlas* a, size_t* out) {
  if (se2sr_status s = require(a && out, "null handle or out pointer");
      s != SE2SR_OK)
    return s;
  *out = a->atlas.entries.size();
  return SE2SR_OK;
}

static se2sr_status atlas_entry_at(const se2sr_atlas* a, size_t i,
                                   const se2sr::AtlasEntry** out) {
  if (se2sr_status s = require(a != nullptr, "null handle"); s != SE2SR_OK)
    return s;
  if (i >= a->atlas.entries.size())
    return fail(SE2SR_ERR_INVALID_ARGUMENT, "atlas index out of range");
  *out = &a->atlas.entries[i];
  return SE2SR_OK;
}

se2sr_status se2sr_atlas_cell_at(const se2sr_atlas* a, size_t i,
                                 se2sr_atlas_cell* out) {
  const se2sr::AtlasEntry* e = nullptr;
  if (se2sr_status s = atlas_entry_at(a, i, &e); s != SE2SR_OK) return s;
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  out->ix = e->ix;
  out->iy = e->iy;
  out->ith = e->ith;
  out->x = e->target.x;
  out->y = e->target.y;
  out->theta = e->target.theta;
  out->in_disk = e->in_disk ? 1 : 0;
  out->solved = e->solved ? 1 : 0;
  out->verdict = verdict_of(e->verdict);
  out->marginal = e->boundary_marginal ? 1 : 0;
  out->length = e->length;
  return SE2SR_OK;
}

se2sr_status se2sr_atlas_cell_error(const se2sr_atlas* a, size_t i,
                                    const char** out) {
  const se2sr::AtlasEntry* e = nullptr;
  if (se2sr_status s = atlas_entry_at(a, i, &e); s != SE2SR_OK) return s;
  if (se2sr_status s = require(out != nullptr, "out is null"); s != SE2SR_OK)
    return s;
  *out = e->error.c_str();
  return SE2SR_OK;
}

}  // extern "C"
