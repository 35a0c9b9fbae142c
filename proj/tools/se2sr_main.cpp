// Command line front end over the se2sr C API: geodesic sampling, boundary
// solving, existence queries, and the existence atlas, emitted as CSV, JSON,
// or SVG. All angles are radians. Exit codes: 0 success, 1 numerical
// failure, 2 usage error; failures print a JSON error object on stderr.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "se2sr/se2sr.h"

namespace {

using ordered_json = nlohmann::ordered_json;

// Thrown when a C API call fails; converted to an exit code in main.
struct ApiError {
  se2sr_status status;
  std::string message;
};

void check(se2sr_status status) {
  if (status != SE2SR_OK) throw ApiError{status, se2sr_last_error()};
}

int exit_code_of(se2sr_status status) {
  switch (status) {
    case SE2SR_ERR_INVALID_ARGUMENT:
    case SE2SR_ERR_DOMAIN:
    case SE2SR_ERR_PRECONDITION:
      return 2;
    default:
      return 1;
  }
}

void print_error(const std::string& status, const std::string& message) {
  ordered_json err;
  err["error"]["status"] = status;
  err["error"]["message"] = message;
  std::cerr << err.dump() << "\n";
}

// JSON value for a double: numbers stay numbers, non-finite values become
// the strings "inf", "-inf", "nan" since JSON has no encoding for them.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Writes to the --output file when set, stdout otherwise.
void emit(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ApiError{SE2SR_ERR_INVALID_ARGUMENT, "cannot open " + path};
  out << body;
}

struct GeodesicHandle {
  se2sr_geodesic* g = nullptr;
  ~GeodesicHandle() { se2sr_geodesic_free(g); }
};

struct ReportHandle {
  se2sr_report* r = nullptr;
  ~ReportHandle() { se2sr_report_free(r); }
};

struct AtlasHandle {
  se2sr_atlas* a = nullptr;
  ~AtlasHandle() { se2sr_atlas_free(a); }
};

std::vector<double> times_of(const se2sr_geodesic* g, double t_max,
                             bool inflections) {
  size_t n = 0;
  auto probe = inflections ? se2sr_geodesic_inflection_times
                           : se2sr_geodesic_cusp_times;
  check(probe(g, t_max, nullptr, 0, &n));
  std::vector<double> ts(n);
  if (n > 0) check(probe(g, t_max, ts.data(), n, &n));
  return ts;
}

// ---- geodesic ------------------------------------------------------------

struct GeodesicOpts {
  double nu0 = 0.0, c0 = 0.0;
  double x = 0.0, y = 0.0, theta = 0.0;
  double t_max = 10.0;
  size_t samples = 256;
  std::string format = "csv";
  std::string output;
};

std::string geodesic_csv(const std::vector<double>& rows, size_t n) {
  std::string body = "t,x,y,theta,curvature\n";
  for (size_t i = 0; i < n; ++i) {
    const double* r = &rows[5 * i];
    body += fmt(r[0]) + "," + fmt(r[1]) + "," + fmt(r[2]) + "," + fmt(r[3]) +
            "," + fmt(r[4]) + "\n";
  }
  return body;
}

// Planar projection as an SVG 1.1 polyline, y axis flipped for screen
// coordinates, cusps marked with X glyphs and the start with a dot.
std::string curve_svg(const std::vector<double>& rows, size_t n,
                      const se2sr_geodesic* g,
                      const std::vector<double>& cusps) {
  double x0 = rows[1], x1 = rows[1], y0 = rows[2], y1 = rows[2];
  for (size_t i = 0; i < n; ++i) {
    x0 = std::min(x0, rows[5 * i + 1]);
    x1 = std::max(x1, rows[5 * i + 1]);
    y0 = std::min(y0, rows[5 * i + 2]);
    y1 = std::max(y1, rows[5 * i + 2]);
  }
  const double w = 640, h = 480, pad = 24;
  const double spanx = std::max(x1 - x0, 1e-9), spany = std::max(y1 - y0, 1e-9);
  const double s = std::min((w - 2 * pad) / spanx, (h - 2 * pad) / spany);
  auto px = [&](double x) { return pad + (x - x0) * s + 0.5 * (w - 2 * pad - spanx * s); };
  auto py = [&](double y) { return h - pad - (y - y0) * s - 0.5 * (h - 2 * pad - spany * s); };

  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
      fmt(w, "%.6g") + "\" height=\"" + fmt(h, "%.6g") + "\">\n" +
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<polyline fill=\"none\" "
      "stroke=\"#1f6fb5\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < n; ++i) {
    svg += fmt(px(rows[5 * i + 1]), "%.6g") + "," +
           fmt(py(rows[5 * i + 2]), "%.6g");
    if (i + 1 < n) svg += " ";
  }
  svg += "\"/>\n";
  svg += "<circle cx=\"" + fmt(px(rows[1]), "%.6g") + "\" cy=\"" +
         fmt(py(rows[2]), "%.6g") + "\" r=\"3\" fill=\"#2ca02c\"/>\n";
  for (double tc : cusps) {
    double pose[3];
    check(se2sr_geodesic_eval(g, tc, pose));
    const double cx = px(pose[0]), cy = py(pose[1]), r = 4;
    svg += "<path stroke=\"#d62728\" stroke-width=\"1.5\" d=\"M" +
           fmt(cx - r, "%.6g") + " " + fmt(cy - r, "%.6g") + "L" +
           fmt(cx + r, "%.6g") + " " + fmt(cy + r, "%.6g") + "M" +
           fmt(cx - r, "%.6g") + " " + fmt(cy + r, "%.6g") + "L" +
           fmt(cx + r, "%.6g") + " " + fmt(cy - r, "%.6g") + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

int cmd_geodesic(const GeodesicOpts& o) {
  GeodesicHandle gh;
  check(se2sr_geodesic_create(o.x, o.y, o.theta, o.nu0, o.c0, &gh.g));

  se2sr_class cls;
  check(se2sr_geodesic_class(gh.g, &cls));
  std::vector<double> rows(5 * o.samples);
  check(se2sr_geodesic_sample(gh.g, o.t_max, o.samples, rows.data()));

  // A stationary planar point has no cusps or inflections to report.
  std::vector<double> cusps, inflections;
  if (cls != SE2SR_CLASS_S) {
    cusps = times_of(gh.g, o.t_max, false);
    inflections = times_of(gh.g, o.t_max, true);
  }

  if (o.format == "csv") {
    emit(o.output, geodesic_csv(rows, o.samples));
  } else if (o.format == "svg") {
    emit(o.output, curve_svg(rows, o.samples, gh.g, cusps));
  } else {
    double energy = 0, period = 0, cut = 0;
    check(se2sr_geodesic_energy(gh.g, &energy));
    check(se2sr_geodesic_period(gh.g, &period));
    check(se2sr_geodesic_cut_time(gh.g, &cut));
    ordered_json doc;
    doc["schema"] = "se2sr/geodesic@1";
    doc["start"] = {{"x", o.x}, {"y", o.y}, {"theta", o.theta}};
    doc["state"] = {{"nu0", o.nu0}, {"c0", o.c0}};
    doc["class"] = se2sr_class_name(cls);
    doc["energy"] = num(energy);
    doc["period"] = num(period);
    doc["cut_time"] = num(cut);
    doc["t_max"] = o.t_max;
    doc["cusps"] = cusps;
    doc["inflections"] = inflections;
    auto& samples = doc["samples"] = ordered_json::array();
    for (size_t i = 0; i < o.samples; ++i) {
      const double* r = &rows[5 * i];
      samples.push_back({{"t", r[0]},
                         {"x", r[1]},
                         {"y", r[2]},
                         {"theta", r[3]},
                         {"curvature", num(r[4])}});
    }
    emit(o.output, doc.dump(2) + "\n");
  }
  return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveOpts {
  double x = 0.0, y = 0.0, theta = 0.0;
  double xi = 1.0;
  bool projective = false;
  std::string format = "json";
  std::string output;
};

ordered_json minimizer_json(const se2sr_report* r, size_t i) {
  double nu0, c0, length, residual;
  se2sr_class cls;
  check(se2sr_report_minimizer(r, i, &nu0, &c0, &length));
  check(se2sr_report_residual(r, i, &residual));
  check(se2sr_report_class(r, i, &cls));
  size_t nc = 0;
  check(se2sr_report_cusp_times(r, i, nullptr, 0, &nc));
  std::vector<double> cusps(nc);
  if (nc > 0) check(se2sr_report_cusp_times(r, i, cusps.data(), nc, &nc));
  ordered_json m;
  m["nu0"] = nu0;
  m["c0"] = c0;
  m["length"] = length;
  m["class"] = se2sr_class_name(cls);
  m["residual"] = residual;
  m["cusps"] = cusps;
  return m;
}

int cmd_solve(const SolveOpts& o) {
  ReportHandle rh;
  if (o.projective) {
    check(se2sr_solve_projective(o.x, o.y, o.theta, o.xi, &rh.r));
  } else {
    check(se2sr_solve(o.x, o.y, o.theta, o.xi, &rh.r));
  }
  size_t count = 0;
  check(se2sr_report_count(rh.r, &count));
  char twin = 0;
  check(se2sr_report_twin_relation(rh.r, &twin));
  double target[3];
  check(se2sr_report_target(rh.r, target));

  if (o.format == "csv") {
    std::string body = "index,nu0,c0,length,class,residual,n_cusps\n";
    for (size_t i = 0; i < count; ++i) {
      double nu0, c0, length, residual;
      se2sr_class cls;
      check(se2sr_report_minimizer(rh.r, i, &nu0, &c0, &length));
      check(se2sr_report_residual(rh.r, i, &residual));
      check(se2sr_report_class(rh.r, i, &cls));
      size_t nc = 0;
      check(se2sr_report_cusp_times(rh.r, i, nullptr, 0, &nc));
      body += std::to_string(i) + "," + fmt(nu0) + "," + fmt(c0) + "," +
              fmt(length) + "," + se2sr_class_name(cls) + "," + fmt(residual) +
              "," + std::to_string(nc) + "\n";
    }
    emit(o.output, body);
    return 0;
  }

  ordered_json doc;
  doc["schema"] = "se2sr/solve@1";
  doc["input"] = {{"x", o.x}, {"y", o.y}, {"theta", o.theta}, {"xi", o.xi}};
  doc["projective"] = o.projective;
  doc["target"] = {{"x", target[0]}, {"y", target[1]}, {"theta", target[2]}};
  if (o.projective) {
    int chosen = 0;
    double pairing = 0;
    check(se2sr_report_projective(rh.r, &chosen, &pairing));
    doc["chosen_lift"] = chosen;
    doc["pairing_residual"] = pairing;
  }
  auto& ms = doc["minimizers"] = ordered_json::array();
  for (size_t i = 0; i < count; ++i) ms.push_back(minimizer_json(rh.r, i));
  doc["twin_relation"] =
      twin ? ordered_json(std::string(1, twin)) : ordered_json(nullptr);
  emit(o.output, doc.dump(2) + "\n");
  return 0;
}

// ---- exists ----------------------------------------------------------------

struct ExistsOpts {
  double x = 0.0, y = 0.0, theta = 0.0;
  double xi = 1.0;
  std::string format = "json";
  std::string output;
};

int cmd_exists(const ExistsOpts& o) {
  se2sr_verdict verdict;
  int marginal = 0;
  double length = 0;
  check(se2sr_existence(o.x, o.y, o.theta, o.xi, &verdict, &marginal, &length));
  if (o.format == "csv") {
    emit(o.output, std::string("verdict,marginal,length\n") +
                       se2sr_verdict_name(verdict) + "," +
                       std::to_string(marginal) + "," + fmt(length) + "\n");
    return 0;
  }
  ordered_json doc;
  doc["schema"] = "se2sr/exists@1";
  doc["input"] = {{"x", o.x}, {"y", o.y}, {"theta", o.theta}, {"xi", o.xi}};
  doc["verdict"] = se2sr_verdict_name(verdict);
  doc["marginal"] = marginal != 0;
  doc["length"] = num(length);
  emit(o.output, doc.dump(2) + "\n");
  return 0;
}

// ---- atlas ----------------------------------------------------------------

struct AtlasOpts {
  double radius = 2.0;
  int grid = 32;
  std::string format = "csv";
  std::string output;
};

const char* cell_status(const se2sr_atlas_cell& c) {
  if (!c.in_disk) return "outside";
  return c.solved ? "ok" : "failed";
}

std::string atlas_csv(const se2sr_atlas* a, size_t count) {
  std::string body = "ix,iy,ith,x,y,theta,status,verdict,marginal,length\n";
  for (size_t i = 0; i < count; ++i) {
    se2sr_atlas_cell c;
    check(se2sr_atlas_cell_at(a, i, &c));
    body += std::to_string(c.ix) + "," + std::to_string(c.iy) + "," +
            std::to_string(c.ith) + "," + fmt(c.x) + "," + fmt(c.y) + "," +
            fmt(c.theta) + "," + cell_status(c) + ",";
    if (c.in_disk && c.solved) {
      body += std::string(se2sr_verdict_name(se2sr_verdict(c.verdict))) + "," +
              std::to_string(c.marginal) + "," + fmt(c.length);
    } else {
      body += ",,";
    }
    body += "\n";
  }
  return body;
}

ordered_json atlas_json(const se2sr_atlas* a, size_t count, double radius,
                        int grid) {
  ordered_json doc;
  doc["schema"] = "se2sr/atlas@1";
  doc["radius"] = radius;
  doc["grid"] = grid;
  auto& cells = doc["cells"] = ordered_json::array();
  for (size_t i = 0; i < count; ++i) {
    se2sr_atlas_cell c;
    check(se2sr_atlas_cell_at(a, i, &c));
    ordered_json jc;
    jc["ix"] = c.ix;
    jc["iy"] = c.iy;
    jc["ith"] = c.ith;
    jc["x"] = c.x;
    jc["y"] = c.y;
    jc["theta"] = c.theta;
    jc["status"] = cell_status(c);
    if (c.in_disk && c.solved) {
      jc["verdict"] = se2sr_verdict_name(se2sr_verdict(c.verdict));
      jc["marginal"] = c.marginal != 0;
      jc["length"] = num(c.length);
    }
    if (c.in_disk && !c.solved) {
      const char* msg = nullptr;
      check(se2sr_atlas_cell_error(a, i, &msg));
      jc["error"] = msg;
    }
    cells.push_back(std::move(jc));
  }
  return doc;
}

// Heat map of verdicts: one (x, y) panel per heading slice, slices laid out
// row-major, y axis flipped inside each panel.
std::string atlas_svg(const se2sr_atlas* a, size_t count, int grid) {
  const int cell = grid <= 16 ? 8 : 4;
  const int panel = grid * cell;
  const int cols = static_cast<int>(std::ceil(std::sqrt(double(grid))));
  const int rows = (grid + cols - 1) / cols;
  const int gap = 18, margin = 12;
  const int w = margin * 2 + cols * panel + (cols - 1) * gap;
  const int h = margin * 2 + rows * (panel + gap);

  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
      std::to_string(w) + "\" height=\"" + std::to_string(h) + "\">\n" +
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t i = 0; i < count; ++i) {
    se2sr_atlas_cell c;
    check(se2sr_atlas_cell_at(a, i, &c));
    const char* fill = "#f0f0f0";
    if (c.in_disk) {
      if (!c.solved) {
        fill = "#000000";
      } else if (c.verdict == SE2SR_EXISTS) {
        fill = "#2ca02c";
      } else if (c.verdict == SE2SR_NO_SOLUTION_INTERNAL_CUSP) {
        fill = "#d62728";
      } else {
        fill = "#ff7f0e";
      }
    }
    const int pc = c.ith % cols, pr = c.ith / cols;
    const int x = margin + pc * (panel + gap) + c.ix * cell;
    const int y = margin + pr * (panel + gap) + (grid - 1 - c.iy) * cell;
    svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" width=\"" + std::to_string(cell) + "\" height=\"" +
           std::to_string(cell) + "\" fill=\"" + fill + "\"/>\n";
    if (c.ix == 0 && c.iy == 0) {
      svg += "<text x=\"" + std::to_string(margin + pc * (panel + gap)) +
             "\" y=\"" +
             std::to_string(margin + pr * (panel + gap) + panel + 12) +
             "\" font-family=\"monospace\" font-size=\"10\">theta=" +
             fmt(c.theta, "%.4g") + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

int cmd_atlas(const AtlasOpts& o) {
  AtlasHandle ah;
  check(se2sr_atlas_run(o.radius, o.grid, &ah.a));
  size_t count = 0;
  check(se2sr_atlas_count(ah.a, &count));
  if (o.format == "csv") {
    emit(o.output, atlas_csv(ah.a, count));
  } else if (o.format == "svg") {
    emit(o.output, atlas_svg(ah.a, count, o.grid));
  } else {
    emit(o.output, atlas_json(ah.a, count, o.radius, o.grid).dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Riemannian geodesics on SE(2)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", se2sr_version());

  GeodesicOpts go;
  CLI::App* geo = app.add_subcommand(
      "geodesic", "sample a geodesic from an initial pendulum state");
  geo->add_option("--nu0", go.nu0, "initial nu, radians on the double cover")
      ->required();
  geo->add_option("--c0", go.c0, "initial pendulum rate")->required();
  geo->add_option("--x", go.x, "start x");
  geo->add_option("--y", go.y, "start y");
  geo->add_option("--theta", go.theta, "start heading, radians");
  geo->add_option("--tmax", go.t_max, "arclength horizon")
      ->check(CLI::PositiveNumber);
  geo->add_option("--samples", go.samples, "number of samples, at least 2")
      ->check(CLI::Range(size_t{2}, size_t{1} << 24));
  geo->add_option("--format", go.format, "csv, json, or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  geo->add_option("--output,-o", go.output, "write to file instead of stdout");

  SolveOpts so;
  CLI::App* solve = app.add_subcommand(
      "solve", "minimizers from the identity pose to a target pose");
  solve->add_option("x", so.x, "target x")->required();
  solve->add_option("y", so.y, "target y")->required();
  solve->add_option("theta", so.theta, "target heading, radians")->required();
  solve->add_option("--xi", so.xi, "forward-speed weight, positive")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--projective", so.projective,
                  "final heading defined only up to a half turn");
  solve->add_option("--format", so.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--output,-o", so.output,
                    "write to file instead of stdout");

  ExistsOpts eo;
  CLI::App* exists = app.add_subcommand(
      "exists", "can the fixed-forward-speed problem reach a target pose");
  exists->add_option("x", eo.x, "target x")->required();
  exists->add_option("y", eo.y, "target y")->required();
  exists->add_option("theta", eo.theta, "target heading, radians")->required();
  exists->add_option("--xi", eo.xi, "forward-speed weight, positive")
      ->check(CLI::PositiveNumber);
  exists->add_option("--format", eo.format, "json or csv")
      ->check(CLI::IsMember({"csv", "json"}));
  exists->add_option("--output,-o", eo.output,
                     "write to file instead of stdout");

  AtlasOpts ao;
  CLI::App* atlas = app.add_subcommand(
      "atlas", "existence sweep over a grid of targets in a disk");
  atlas->add_option("--radius", ao.radius, "disk radius, positive")
      ->check(CLI::PositiveNumber);
  atlas->add_option("--grid", ao.grid, "cells per axis, at least 2")
      ->check(CLI::Range(2, 512));
  atlas->add_option("--format", ao.format, "csv, json, or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  atlas->add_option("--output,-o", ao.output,
                    "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("invalid_argument", e.what());
    return 2;
  }

  try {
    if (geo->parsed()) return cmd_geodesic(go);
    if (solve->parsed()) return cmd_solve(so);
    if (exists->parsed()) return cmd_exists(eo);
    return cmd_atlas(ao);
  } catch (const ApiError& e) {
    print_error(se2sr_status_name(e.status), e.message);
    return exit_code_of(e.status);
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
}
