#pragma once

// CSV / JSON serialization of fields, profiles, reports and runs. Numbers are
// written with 17 significant digits so artifacts round-trip exactly; files
// are written to a temporary sibling and renamed into place.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "biharm/biharmonic.hpp"
#include "biharm/errors.hpp"
#include "biharm/lane_emden.hpp"
#include "biharm/parabolic.hpp"
#include "biharm/params.hpp"
#include "biharm/radial.hpp"
#include "biharm/report.hpp"

namespace biharm {

using json = nlohmann::ordered_json;

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// NaN and infinities become null.
inline json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

/// Writes `content` to `path` via a temporary file in the same directory.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// Comma-separated table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw SizeError("CsvTable: row width does not match header");
    rows_.push_back(cells);
  }

  void add_numbers(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(cells);
  }

  std::size_t rows() const { return rows_.size(); }

  std::string str() const {
    std::ostringstream os;
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
    return os.str();
  }

 private:
  static void write_line(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// ---- fields and grids

inline json to_json(const RadialGrid& g) {
  return json{{"n", g.dimension()}, {"h", g.spacing()}, {"N", g.intervals()}};
}

inline RadialGrid grid_from_json(const json& j) {
  return RadialGrid::with_spacing(j.at("n").get<int>(), j.at("h").get<double>(), j.at("N").get<std::size_t>());
}

inline json field_to_json(const Field& f, const RadialGrid& g) {
  return json{{"grid", to_json(g)}, {"values", f.data()}};
}

inline std::pair<RadialGrid, Field> field_from_json(const json& j) {
  RadialGrid g = grid_from_json(j.at("grid"));
  Field f(j.at("values").get<std::vector<double>>());
  if (f.size() != g.size()) throw SizeError("field JSON: value count does not match grid");
  return {g, std::move(f)};
}

inline std::string field_csv(const Field& f, const RadialGrid& g) {
  if (f.size() != g.size()) throw SizeError("field_csv: size mismatch");
  CsvTable t({"r", "value"});
  for (std::size_t i = 0; i < f.size(); ++i) t.add_numbers({g.r(i), f[i]});
  return t.str();
}

// ---- parameter region

inline json to_json(const Coefficients& c) {
  return json{{"I1", c.I1}, {"I2", c.I2}, {"I3", c.I3}, {"K1", c.K1}, {"K2", c.K2},
              {"J1", c.J1}, {"J2", c.J2}, {"L1", c.L1}, {"L2", c.L2}, {"p_half", c.p_half}};
}

inline json region_json(const ParamSet& ps) {
  const auto adm = check_admissible(ps);
  json params{{"n", ps.n}, {"q", ps.q}, {"alpha", ps.alpha}, {"beta", ps.beta}};
  if (ps.gamma) params["gamma"] = *ps.gamma;
  json out;
  out["params"] = params;
  out["admissible"] = adm.admissible;
  out["reasons"] = adm.reasons;
  json coeffs = json::object();
  if (ps.n >= 3 && ps.q > 1.0 && ps.alpha >= 0.0 && ps.beta >= 0.0) {
    ParamSet with_gamma = ps;
    if (with_gamma.gamma && !(*with_gamma.gamma >= 0.0 && *with_gamma.gamma < 1.0)) with_gamma.gamma.reset();
    coeffs = to_json(coefficients(with_gamma));
  }
  out["coefficients"] = coeffs;
  const double denom = ps.q - 1.0 - 4.0 * ps.alpha / ps.n;
  out["beta_max"] = denom > 0.0 ? json(beta_max(ps.alpha, ps.q, ps.n)) : json(nullptr);
  out["q_min"] = (ps.alpha > 0.0 && ps.alpha <= 0.5) ? json(q_min(ps.alpha, ps.n)) : json(nullptr);
  const auto gi = gamma_interval(ps.alpha, ps.q, ps.n);
  out["gamma_star"] = gi.upper;
  out["gamma_interval_empty"] = gi.empty();
  // supremum of 2/(1-gamma) over [0, gamma_star)
  out["growth_exponent"] = gi.empty() ? json(nullptr) : json(2.0 / (1.0 - gi.upper));
  out["tau"] = (ps.q >= 3.0 && ps.n >= 3) ? json(tau(ps.q, ps.n)) : json(nullptr);
  return out;
}

inline std::vector<std::string> region_csv_header() {
  return {"alpha", "q", "n", "admissible", "I1", "I2", "I3", "K1", "K2", "gamma_star"};
}

inline std::vector<std::string> region_csv_row(const ParamSet& ps) {
  const auto adm = check_admissible(ps);
  const auto& c = adm.coefficients;
  const auto gi = gamma_interval(ps.alpha, ps.q, ps.n);
  return {format_number(ps.alpha), format_number(ps.q), std::to_string(ps.n), adm.admissible ? "1" : "0",
          format_number(c.I1),     format_number(c.I2), format_number(c.I3),  format_number(c.K1),
          format_number(c.K2),     format_number(gi.upper)};
}

// ---- reports

inline json to_json(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  json out;
  out["inequality"] = r.inequality;
  out["params"] = params;
  out["pass"] = r.pass;
  out["applicable"] = r.applicable;
  out["min_margin"] = number_or_null(r.min_margin);
  out["argmin_r"] = number_or_null(r.argmin_r);
  if (!r.time.empty()) out["argmin_t"] = number_or_null(r.argmin_t);
  out["tol"] = r.tolerance;
  out["scale"] = r.scale;
  out["refinement_order"] = r.refinement_order ? number_or_null(*r.refinement_order) : json(nullptr);
  out["evaluated_nodes"] = r.evaluated;
  out["caveats"] = r.caveats;
  return out;
}

/// (r, margin) or (t, x, margin) rows; uncounted nodes are included with counted = 0.
inline std::string margin_csv(const VerificationReport& r) {
  const bool timed = !r.time.empty();
  CsvTable t(timed ? std::vector<std::string>{"t", "x", "margin", "counted"}
                   : std::vector<std::string>{"r", "margin", "counted"});
  for (std::size_t i = 0; i < r.margin.size(); ++i) {
    const double c = (r.counted.empty() || r.counted[i]) ? 1.0 : 0.0;
    const double x = i < r.coordinate.size() ? r.coordinate[i] : static_cast<double>(i);
    if (timed) {
      t.add_numbers({r.time[i], x, r.margin[i], c});
    } else {
      t.add_numbers({x, r.margin[i], c});
    }
  }
  return t.str();
}

// ---- biharmonic profiles

inline json to_json(const SolutionProfile& p) {
  json meta{{"n", p.meta.n},
            {"q", p.meta.q},
            {"source", to_string(p.meta.source)},
            {"u0", p.meta.u0},
            {"z0", p.meta.z0}};
  json out{{"grid", to_json(p.grid)},
           {"meta", meta},
           {"classification", to_string(p.classification)},
           {"event_r", number_or_null(p.event_r)},
           {"tail_certified", p.tail.certified},
           {"tail_decrease_bound", number_or_null(p.tail.decrease_bound)},
           {"tail_available", p.tail.available}};
  out["u"] = p.u.data();
  out["du"] = p.du.data();
  out["lap_u"] = p.z.data();
  out["dlap_u"] = p.dz.data();
  return out;
}

inline std::string profile_csv(const SolutionProfile& p) {
  CsvTable t({"r", "u", "du", "lap_u", "dlap_u", "residual"});
  if (!p.has_data()) return t.str();
  const auto res = residual(p);
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    t.add_numbers({p.grid.r(i), p.u[i], p.du[i], p.z[i], p.dz[i], res[i]});
  }
  return t.str();
}

// ---- mixed system

inline std::string system_csv(const SystemProfile& p) {
  CsvTable t({"r", "u", "v", "w", "margin_comparison", "residual_u", "residual_v"});
  if (!p.has_data()) return t.str();
  const auto w = p.w();
  const auto res = system_residuals(p);
  const double q = p.exps.q, r = p.exps.r;
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    const double margin = std::pow(p.v[i], r + 1.0) / (r + 1.0) - std::pow(p.u[i], 1.0 - q) / (q - 1.0);
    t.add_numbers({p.grid.r(i), p.u[i], p.v[i], w[i], margin, res.res_u[i], res.res_v[i]});
  }
  return t.str();
}

inline json to_json(const SystemProfile& p) {
  return json{{"grid", to_json(p.grid)},
              {"q", p.exps.q},
              {"r", p.exps.r},
              {"sigma", p.exps.sigma()},
              {"l", p.exps.ell()},
              {"u0", p.u0},
              {"v0", p.v0},
              {"classification", to_string(p.classification)},
              {"event_r", number_or_null(p.event_r)},
              {"tail_certified", p.tail.certified}};
}

// ---- parabolic runs

inline std::string snapshot_csv(const SpaceTimeField& f) {
  const bool box = std::holds_alternative<PeriodicBox>(f.geometry);
  CsvTable t({"t", box ? "x" : "r", "u", "v", "w"});
  for (std::size_t k = 0; k < f.t.size(); ++k) {
    const auto w = f.w(k);
    for (std::size_t i = 0; i < f.x.size(); ++i) t.add_numbers({f.t[k], f.x[i], f.u[k][i], f.v[k][i], w[i]});
  }
  return t.str();
}

inline json geometry_json(const Geometry& g) {
  if (const auto* box = std::get_if<PeriodicBox>(&g)) {
    return json{{"kind", "periodic-box"}, {"length", box->length}, {"nodes", box->nodes}};
  }
  const auto& ball = std::get<RadialBall>(g);
  return json{{"kind", "radial-ball"}, {"dimension", ball.dimension}, {"radius", ball.radius},
              {"intervals", ball.intervals}};
}

inline json manifest_json(const SpaceTimeField& f) {
  json policy{{"scheme", "strang: crank-nicolson diffusion, rk4 reaction"},
              {"dt_max", f.control.dt_max},
              {"reaction_increment", f.control.reaction_increment},
              {"blowup_factor", f.control.blowup_factor},
              {"dt_min", f.control.dt_min},
              {"reaction", f.control.reaction}};
  return json{{"geometry", geometry_json(f.geometry)},
              {"p", f.exps.p},
              {"r", f.exps.r},
              {"dt_policy", policy},
              {"blow_up", f.blow_up},
              {"underflow", f.underflow},
              {"positivity_lost", f.positivity_lost},
              {"T_reached", f.t_reached},
              {"snapshots", f.t.size()},
              {"steps", f.steps}};
}

}  // namespace biharm
