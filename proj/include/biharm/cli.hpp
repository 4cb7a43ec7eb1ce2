#pragma once

// Run configuration and command dispatch for the biharm_lab front end.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "biharm/biharmonic.hpp"
#include "biharm/errors.hpp"
#include "biharm/io.hpp"
#include "biharm/lane_emden.hpp"
#include "biharm/parabolic.hpp"
#include "biharm/params.hpp"
#include "biharm/report.hpp"
#include "biharm/sweep.hpp"
#include "biharm/verify.hpp"

namespace biharm {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_precondition = 2, exit_verification = 3, exit_integrator = 4 };

struct RunConfig {
  std::string command;
  std::string out = "biharm_out";
  std::vector<std::string> formats{"csv", "json"};

  int n = 3;
  double q = 7.0;
  std::optional<double> alpha, beta, gamma;
  double r_exp = 1.0;
  double p_exp = 2.0;
  double r_max = 20.0;
  std::optional<double> h;  // default r_max / 4096
  std::optional<double> tol;

  bool exact = false;
  std::optional<double> u0, z0, v0;
  std::string check;
  std::string corollary;

  std::string module;
  std::vector<int> n_list{3, 4, 5};
  std::vector<double> q_list{2.0, 3.0, 5.0, 7.0};
  std::vector<double> r_list{0.5, 1.0, 2.0};
  std::vector<double> p_list{2.0, 3.0};
  std::vector<double> alpha_list{0.1, 0.2, 0.3, 0.4, 0.5};
  int targets = 0;  // shooting targets per case; 0 picks the module default

  std::string geometry = "periodic";
  std::size_t nodes = 512;
  double length = 2.0 * std::numbers::pi;
  std::string initial = "perturbed";
  double amplitude = 0.3;
  double T = 0.5;
  std::size_t time_intervals = 2000;
  std::size_t csv_stride = 20;
  double dt_max = 2.5e-4;
  bool reaction = true;
  std::size_t samples = 100000;
  std::uint64_t seed = 20240607;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> c{"region", "solve-biharmonic", "verify", "solve-system",
                                          "simulate-parabolic", "sweep"};
  return c;
}

namespace detail {

template <class T>
json opt_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace detail

inline json to_json(const RunConfig& c) {
  return json{{"command", c.command},
              {"out", c.out},
              {"formats", c.formats},
              {"n", c.n},
              {"q", c.q},
              {"alpha", detail::opt_json(c.alpha)},
              {"beta", detail::opt_json(c.beta)},
              {"gamma", detail::opt_json(c.gamma)},
              {"r_exp", c.r_exp},
              {"p_exp", c.p_exp},
              {"r_max", c.r_max},
              {"h", detail::opt_json(c.h)},
              {"tol", detail::opt_json(c.tol)},
              {"exact", c.exact},
              {"u0", detail::opt_json(c.u0)},
              {"z0", detail::opt_json(c.z0)},
              {"v0", detail::opt_json(c.v0)},
              {"check", c.check},
              {"corollary", c.corollary},
              {"module", c.module},
              {"n_list", c.n_list},
              {"q_list", c.q_list},
              {"r_list", c.r_list},
              {"p_list", c.p_list},
              {"alpha_list", c.alpha_list},
              {"targets", c.targets},
              {"geometry", c.geometry},
              {"nodes", c.nodes},
              {"length", c.length},
              {"initial", c.initial},
              {"amplitude", c.amplitude},
              {"T", c.T},
              {"time_intervals", c.time_intervals},
              {"csv_stride", c.csv_stride},
              {"dt_max", c.dt_max},
              {"reaction", c.reaction},
              {"samples", c.samples},
              {"seed", c.seed}};
}

/// Missing keys keep their defaults; unknown keys and type mismatches are
/// usage errors naming every offending field.
inline RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config: top level must be a JSON object");
  RunConfig c;
  const json reference = to_json(c);
  std::vector<std::string> problems;
  for (const auto& [key, value] : j.items()) {
    if (!reference.contains(key)) problems.push_back("unknown field '" + key + "'");
  }
  auto read = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(target);
    } catch (const json::exception&) {
      problems.push_back("field '" + std::string(key) + "' has the wrong type");
    }
  };
  auto read_opt = [&](const char* key, std::optional<double>& target) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
      target.reset();
    } else if (j.at(key).is_number()) {
      target = j.at(key).get<double>();
    } else {
      problems.push_back("field '" + std::string(key) + "' must be a number or null");
    }
  };
  read("command", c.command);
  read("out", c.out);
  read("formats", c.formats);
  read("n", c.n);
  read("q", c.q);
  read_opt("alpha", c.alpha);
  read_opt("beta", c.beta);
  read_opt("gamma", c.gamma);
  read("r_exp", c.r_exp);
  read("p_exp", c.p_exp);
  read("r_max", c.r_max);
  read_opt("h", c.h);
  read_opt("tol", c.tol);
  read("exact", c.exact);
  read_opt("u0", c.u0);
  read_opt("z0", c.z0);
  read_opt("v0", c.v0);
  read("check", c.check);
  read("corollary", c.corollary);
  read("module", c.module);
  read("n_list", c.n_list);
  read("q_list", c.q_list);
  read("r_list", c.r_list);
  read("p_list", c.p_list);
  read("alpha_list", c.alpha_list);
  read("targets", c.targets);
  read("geometry", c.geometry);
  read("nodes", c.nodes);
  read("length", c.length);
  read("initial", c.initial);
  read("amplitude", c.amplitude);
  read("T", c.T);
  read("time_intervals", c.time_intervals);
  read("csv_stride", c.csv_stride);
  read("dt_max", c.dt_max);
  read("reaction", c.reaction);
  read("samples", c.samples);
  read("seed", c.seed);
  if (!problems.empty()) {
    std::string msg = "config:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw UsageError(msg);
  }
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("config: cannot read " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw UsageError("config: " + path.string() + " is not valid JSON (" + e.what() + ")");
  }
  return config_from_json(j);
}

/// Field-level checks independent of the numerical preconditions.
inline void validate(const RunConfig& c) {
  std::vector<std::string> problems;
  bool known = false;
  for (const auto& k : known_commands()) known = known || k == c.command;
  if (!known) problems.push_back("command '" + c.command + "' is not one of region, solve-biharmonic, verify, "
                                 "solve-system, simulate-parabolic, sweep");
  for (const auto& f : c.formats) {
    if (f != "csv" && f != "json") problems.push_back("format '" + f + "' is not csv or json");
  }
  if (c.out.empty()) problems.push_back("out must not be empty");
  if (!(c.r_max > 0.0)) problems.push_back("r_max must be positive");
  if (c.h && !(*c.h > 0.0)) problems.push_back("h must be positive");
  if (c.tol && !(*c.tol > 0.0)) problems.push_back("tol must be positive");
  if (!c.corollary.empty() && c.corollary != "1.2" && c.corollary != "1.3") {
    problems.push_back("corollary must be 1.2 or 1.3");
  }
  if (c.command == "sweep" && c.module.empty()) problems.push_back("sweep needs --module");
  if (c.geometry != "periodic" && c.geometry != "radial") problems.push_back("geometry must be periodic or radial");
  if (c.time_intervals < 2) problems.push_back("time_intervals must be >= 2");
  if (c.csv_stride == 0) problems.push_back("csv_stride must be >= 1");
  if (c.targets < 0) problems.push_back("targets must be >= 0");
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw UsageError(msg);
  }
}

namespace detail {

class Artifacts {
 public:
  explicit Artifacts(const RunConfig& c) : root_(c.out) {
    for (const auto& f : c.formats) {
      csv_ = csv_ || f == "csv";
      json_ = json_ || f == "json";
    }
  }
  void csv(const std::string& name, const std::string& content) const {
    if (csv_) write_atomic(root_ / name, content);
  }
  void json_file(const std::string& name, const json& j) const {
    if (json_) write_atomic(root_ / name, j.dump(2) + "\n");
  }
  void always(const std::string& name, const std::string& content) const { write_atomic(root_ / name, content); }

 private:
  std::filesystem::path root_;
  bool csv_ = false, json_ = false;
};

inline RadialGrid make_grid(const RunConfig& c, int n) {
  const double h = c.h.value_or(c.r_max / 4096.0);
  const double cells = std::round(c.r_max / h);
  if (cells < RadialGrid::kMinIntervals) throw DomainError("grid: r_max / h must be at least 16");
  return RadialGrid::with_spacing(n, h, static_cast<std::size_t>(cells));
}

inline void apply_tolerance(const RunConfig& c, VerificationReport& rep) {
  if (!c.tol) return;
  rep.tolerance = *c.tol;
  if (rep.applicable && !rep.margin.empty()) finalize(rep);
}

struct Outcome {
  bool all_pass = true;
  void take(const VerificationReport& r) { all_pass = all_pass && (!r.applicable || r.pass); }
  int code() const { return all_pass ? exit_ok : exit_verification; }
};

inline void emit_report(const Artifacts& art, const RunConfig& c, VerificationReport rep, Outcome& outcome,
                        std::ostream& log) {
  apply_tolerance(c, rep);
  art.json_file("report_" + rep.inequality + ".json", to_json(rep));
  art.csv("margin_" + rep.inequality + ".csv", margin_csv(rep));
  outcome.take(rep);
  log << rep.inequality << ": " << (rep.applicable ? (rep.pass ? "pass" : "FAIL") : "not applicable")
      << " min_margin=" << format_number(rep.min_margin) << " tol*scale=" << format_number(rep.tolerance * rep.scale);
  if (rep.refinement_order) log << " order=" << format_number(*rep.refinement_order);
  log << "\n";
}

inline SolutionProfile make_profile(const RunConfig& c) {
  if (c.exact) return exact_solution(make_grid(c, 3));
  if (!c.z0) throw UsageError("shooting needs --z0 (or use --exact)");
  return shoot(make_grid(c, c.n), c.q, c.u0.value_or(1.0), *c.z0);
}

inline int profile_gate(const SolutionProfile& p, std::ostream& log) {
  log << "profile: " << to_string(p.classification);
  if (!std::isnan(p.event_r)) log << " at r=" << format_number(p.event_r);
  log << "\n";
  if (p.classification == Classification::integrator_failure) return exit_integrator;
  if (!p.has_data() || p.classification == Classification::touched_zero ||
      p.classification == Classification::non_conforming) {
    return exit_precondition;
  }
  return exit_ok;
}

inline int run_region(const RunConfig& c, const Artifacts& art, std::ostream& log) {
  ParamSet ps{c.n, c.q, c.alpha.value_or(0.0), 0.0, c.gamma};
  if (c.beta) {
    ps.beta = *c.beta;
  } else if (c.q - 1.0 - 4.0 * ps.alpha / c.n > 0.0) {
    ps.beta = beta_max(ps.alpha, c.q, c.n);
  }
  const json j = region_json(ps);
  art.always("region.json", j.dump(2) + "\n");
  log << j.dump(2) << "\n";
  return exit_ok;
}

inline int run_solve_biharmonic(const RunConfig& c, const Artifacts& art, std::ostream& log) {
  const auto p = make_profile(c);
  art.csv("profile.csv", profile_csv(p));
  art.json_file("profile.json", to_json(p));
  const int gate = profile_gate(p, log);
  return gate == exit_integrator ? exit_integrator : exit_ok;
}

inline int run_verify(const RunConfig& c, const Artifacts& art, std::ostream& log) {
  const auto p = make_profile(c);
  art.csv("profile.csv", profile_csv(p));
  art.json_file("profile.json", to_json(p));
  if (const int gate = profile_gate(p, log); gate != exit_ok) return gate;

  std::string check = c.check;
  if (c.corollary == "1.2") check = "half-alpha";
  if (c.corollary == "1.3") check = "half-gradient";
  if (check.empty()) check = c.alpha ? "gradient" : "weak";
  const bool regenerable = p.meta.source == Source::exact || p.meta.source == Source::shooting;

  const double alpha = c.alpha.value_or(0.5);
  auto beta_default = [&] { return c.beta.value_or(beta_max(alpha, p.meta.q, p.meta.n)); };
  auto refine = [&](const std::function<VerificationReport(const SolutionProfile&)>& f) {
    return regenerable ? with_refinement(p, f) : f(p);
  };

  std::vector<VerificationReport> reports;
  auto want = [&](const char* name) { return check == name || check == "all"; };
  if (want("weak")) reports.push_back(verify_weak_inequality(p));
  if (want("gradient")) reports.push_back(verify_gradient_estimate(p, c.alpha.value_or(0.5), beta_default()));
  if (want("half-alpha")) reports.push_back(verify_half_alpha_estimate(p));
  if (want("half-gradient")) reports.push_back(verify_half_gradient_estimate(p));
  if (want("auxiliary")) {
    const double b = beta_default();
    reports.push_back(refine([&](const SolutionProfile& x) { return verify_auxiliary_inequality(x, alpha, b); }));
  }
  if (want("identity")) {
    const double b = beta_default();
    reports.push_back(refine([&](const SolutionProfile& x) { return verify_inverse_power_identity(x, alpha, b); }));
  }
  if (want("weighted")) {
    const double b = beta_default();
    const double g = c.gamma.value_or(0.0);
    reports.push_back(refine([&](const SolutionProfile& x) { return verify_weighted_inequality(x, alpha, b, g); }));
  }
  if (want("hessian")) reports.push_back(verify_hessian_trace_bound(p));
  if (want("curvature")) {
    auto cr = scalar_curvature(p);
    art.csv("scalar_curvature.csv", field_csv(cr.scal, p.grid));
    reports.push_back(std::move(cr.report));
  }
  if (reports.empty()) throw UsageError("unknown check '" + check + "'");

  Outcome outcome;
  for (auto& r : reports) emit_report(art, c, std::move(r), outcome, log);
  return outcome.code();
}

inline int run_solve_system(const RunConfig& c, const Artifacts& art, std::ostream& log) {
  SystemProfile p = [&] {
    if (c.exact) {
      const double lam = exact_amplitude();
      return solve_radial_system(make_grid(c, 3), 7.0, 1.0, lam, 3.0 * lam);
    }
    if (!c.v0) throw UsageError("solve-system needs --v0 (or use --exact)");
    return solve_radial_system(make_grid(c, c.n), c.q, c.r_exp, c.u0.value_or(1.0), *c.v0);
  }();
  art.csv("system.csv", system_csv(p));
  art.json_file("system.json", to_json(p));
  log << "profile: " << to_string(p.classification) << "\n";
  if (p.classification == Classification::integrator_failure) return exit_integrator;
  if (!p.window_positive()) return exit_precondition;

  Outcome outcome;
  emit_report(art, c, verify_system_comparison(p), outcome, log);
  emit_report(art, c, with_refinement(p, [](const SystemProfile& x) { return verify_mixed_differential_inequality(x); }),
              outcome, log);
  emit_report(art, c, verify_concavity_step(p), outcome, log);
  return outcome.code();
}

/// Initial data for the parabolic run; "perturbed" keeps w(., 0) <= 0.
inline std::pair<std::vector<double>, std::vector<double>> parabolic_initial(const RunConfig& c,
                                                                            const Geometry& g) {
  const ParabolicExponents e{c.p_exp, c.r_exp};
  const auto x = geometry_nodes(g);
  const double s = e.sigma(), l = e.ell();
  std::vector<double> u(x.size()), v(x.size());
  const bool box = std::holds_alternative<PeriodicBox>(g);
  const double period = box ? std::get<PeriodicBox>(g).length : 2.0 * std::get<RadialBall>(g).radius;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phase = 2.0 * std::numbers::pi * x[i] / period;
    if (c.initial == "homogeneous") {
      u[i] = 0.5;
      v[i] = 0.8;
    } else if (c.initial == "equality") {
      u[i] = 0.5;
      v[i] = std::pow((e.r + 1.0) / (e.p + 1.0) * std::pow(u[i], e.p + 1.0), 1.0 / (e.r + 1.0));
    } else if (c.initial == "perturbed" && box) {
      v[i] = 0.6 + c.amplitude * 0.6 * std::sin(phase);
      u[i] = l * std::pow(v[i], s) * (1.0 - 0.05 * (1.0 + std::cos(2.0 * phase)));
    } else if (c.initial == "perturbed") {
      // (1 - rho^2)^4 is flat to third order at the wall, so Delta v also has zero flux there
      const double rho = x[i] / std::get<RadialBall>(g).radius;
      const double bump = std::pow(1.0 - rho * rho, 4);
      v[i] = 0.6 + c.amplitude * 0.6 * (2.0 * bump - 1.0);
      u[i] = l * std::pow(v[i], s) * (1.0 - 0.1 * bump);
    } else {
      throw UsageError("initial must be homogeneous, equality or perturbed");
    }
  }
  return {u, v};
}

inline Geometry make_geometry(const RunConfig& c) {
  if (c.geometry == "radial") return RadialBall{c.n, c.r_max, c.nodes};
  return PeriodicBox{c.length, c.nodes};
}

inline int run_parabolic(const RunConfig& c, const Artifacts& art, std::ostream& log) {
  const Geometry g = make_geometry(c);
  ParabolicExponents e{c.p_exp, c.r_exp};
  e.validate();
  auto [u, v] = parabolic_initial(c, g);
  StepControl ctl;
  ctl.dt_max = c.dt_max;
  ctl.reaction = c.reaction;
  const auto f = simulate(g, e, std::move(u), std::move(v), uniform_times(c.T, c.time_intervals), ctl);

  SpaceTimeField thinned = f;
  thinned.t.clear();
  thinned.u.clear();
  thinned.v.clear();
  for (std::size_t k = 0; k < f.t.size(); k += c.csv_stride) {
    thinned.t.push_back(f.t[k]);
    thinned.u.push_back(f.u[k]);
    thinned.v.push_back(f.v[k]);
  }
  art.csv("snapshots.csv", snapshot_csv(thinned));
  art.always("manifest.json", manifest_json(f).dump(2) + "\n");
  log << "run: T_reached=" << format_number(f.t_reached) << " blow_up=" << f.blow_up << " steps=" << f.steps << "\n";
  if (f.underflow || f.positivity_lost) return exit_integrator;

  Outcome outcome;
  if (f.t.size() >= 3) emit_report(art, c, verify_reaction_diffusion_inequality(f), outcome, log);
  emit_report(art, c, verify_parabolic_comparison(f), outcome, log);
  emit_report(art, c, verify_propagation(f), outcome, log);
  emit_report(art, c, verify_convexity_steps(e.p, e.r, c.samples, c.seed), outcome, log);
  return outcome.code();
}

inline std::vector<double> log_targets(double lo_exp, double hi_exp, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * k / std::max(1, count - 1));
  }
  return out;
}

struct SweepRow {
  std::vector<std::string> cells;
  bool counted = false;
  bool pass = true;
};

inline int finish_sweep(const Artifacts& art, const std::string& name, const std::vector<std::string>& header,
                        const std::vector<SweepRow>& rows, std::ostream& log) {
  CsvTable t(header);
  std::size_t checked = 0, failed = 0;
  for (const auto& r : rows) {
    t.add_row(r.cells);
    if (r.counted) {
      ++checked;
      if (!r.pass) ++failed;
    }
  }
  art.always(name, t.str());
  log << name << ": " << rows.size() << " cases, " << checked << " verified, " << failed << " failed\n";
  return failed == 0 ? exit_ok : exit_verification;
}

inline std::string verdict(const SweepRow& r) { return r.counted ? (r.pass ? "pass" : "fail") : "skipped"; }

inline int run_sweep(const RunConfig& c, const Artifacts& art, std::ostream& log) {
  if (c.module == "region") {
    std::vector<ParamSet> cases;
    for (int n : c.n_list)
      for (double q : c.q_list)
        for (double a : c.alpha_list) {
          ParamSet ps{n, q, a, 0.0, std::nullopt};
          if (q - 1.0 - 4.0 * a / n > 0.0) ps.beta = beta_max(a, q, n);
          cases.push_back(ps);
        }
    CsvTable t(region_csv_header());
    for (const auto& ps : cases) t.add_row(region_csv_row(ps));
    art.always("region_sweep.csv", t.str());
    log << "region_sweep.csv: " << cases.size() << " rows\n";
    return exit_ok;
  }

  if (c.module == "biharmonic") {
    struct Case {
      int n;
      double q, z0;
    };
    std::vector<Case> cases;
    const auto z0s = log_targets(-1.0, 1.5, c.targets > 0 ? c.targets : 24);
    for (int n : c.n_list)
      for (double q : c.q_list)
        for (double z0 : z0s) cases.push_back({n, q, z0});
    const auto rows = parallel_map<SweepRow>(cases.size(), [&](std::size_t i) {
      const auto& k = cases[i];
      const auto p = shoot(make_grid(c, k.n), k.q, c.u0.value_or(1.0), k.z0);
      SweepRow row;
      double min_margin = std::nan("");
      if (p.classification == Classification::positive_on_window) {
        auto rep = verify_weak_inequality(p);
        apply_tolerance(c, rep);
        row.counted = true;
        row.pass = rep.pass;
        min_margin = rep.min_margin;
      }
      row.cells = {std::to_string(k.n), format_number(k.q), format_number(k.z0), to_string(p.classification),
                   format_number(min_margin), verdict(row)};
      return row;
    });
    return finish_sweep(art, "sweep_biharmonic.csv", {"n", "q", "z0", "classification", "min_margin", "verdict"},
                        rows, log);
  }

  if (c.module == "lane-emden") {
    struct Case {
      int n;
      double q, r, v0;
    };
    std::vector<Case> cases;
    const auto v0s = log_targets(-1.0, 1.0, c.targets > 0 ? c.targets : 12);
    for (int n : c.n_list)
      for (double q : c.q_list)
        for (double r : c.r_list)
          for (double v0 : v0s) cases.push_back({n, q, r, v0});
    const auto rows = parallel_map<SweepRow>(cases.size(), [&](std::size_t i) {
      const auto& k = cases[i];
      const auto p = solve_radial_system(make_grid(c, k.n), k.q, k.r, c.u0.value_or(1.0), k.v0);
      SweepRow row;
      double min_margin = std::nan("");
      std::string concavity = "skipped";
      if (p.classification == Classification::positive_on_window) {
        auto rep = verify_system_comparison(p);
        apply_tolerance(c, rep);
        auto step = verify_concavity_step(p);
        row.counted = true;
        row.pass = rep.pass && step.pass;
        min_margin = rep.min_margin;
        concavity = step.evaluated == 0 ? "vacuous" : (step.pass ? "pass" : "fail");
      }
      row.cells = {std::to_string(k.n),        format_number(k.q), format_number(k.r),
                   format_number(k.v0),        to_string(p.classification), format_number(min_margin),
                   concavity,                  verdict(row)};
      return row;
    });
    return finish_sweep(art, "sweep_lane_emden.csv",
                        {"n", "q", "r", "v0", "classification", "min_margin", "concavity_step", "verdict"}, rows, log);
  }

  if (c.module == "parabolic") {
    struct Case {
      double p, r;
    };
    std::vector<Case> cases;
    for (double p : c.p_list)
      for (double r : c.r_list)
        if (p >= r && p * r > 1.0) cases.push_back({p, r});
    const auto rows = parallel_map<SweepRow>(cases.size(), [&](std::size_t i) {
      const auto& k = cases[i];
      RunConfig local = c;
      local.p_exp = k.p;
      local.r_exp = k.r;
      local.initial = "perturbed";
      const Geometry g = make_geometry(local);
      auto [u, v] = parabolic_initial(local, g);
      StepControl ctl;
      ctl.dt_max = c.dt_max;
      const auto f = simulate(g, ParabolicExponents{k.p, k.r}, std::move(u), std::move(v),
                              uniform_times(c.T, c.time_intervals), ctl);
      auto ineq = verify_reaction_diffusion_inequality(f);
      auto prop = verify_propagation(f);
      auto conv = verify_convexity_steps(k.p, k.r, c.samples, c.seed);
      apply_tolerance(c, ineq);
      apply_tolerance(c, prop);
      SweepRow row;
      row.counted = true;
      row.pass = ineq.pass && prop.pass && conv.pass;
      row.cells = {format_number(k.p),
                   format_number(k.r),
                   format_number(f.t_reached),
                   f.blow_up ? "1" : "0",
                   format_number(ineq.min_margin),
                   format_number(prop.min_margin),
                   format_number(conv.params.at("violations")),
                   verdict(row)};
      return row;
    });
    return finish_sweep(art, "sweep_parabolic.csv",
                        {"p", "r", "T_reached", "blow_up", "inequality_min_margin", "propagation_min_margin",
                         "convexity_violations", "verdict"},
                        rows, log);
  }

  throw UsageError("unknown sweep module '" + c.module + "' (region, biharmonic, lane-emden, parabolic)");
}

}  // namespace detail

/// Executes one configured command; returns the process exit code. Every
/// run also records its effective configuration as run_config.json.
inline int run(const RunConfig& c, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  try {
    validate(c);
    const detail::Artifacts art(c);
    art.always("run_config.json", to_json(c).dump(2) + "\n");
    if (c.command == "region") return detail::run_region(c, art, log);
    if (c.command == "solve-biharmonic") return detail::run_solve_biharmonic(c, art, log);
    if (c.command == "verify") return detail::run_verify(c, art, log);
    if (c.command == "solve-system") return detail::run_solve_system(c, art, log);
    if (c.command == "simulate-parabolic") return detail::run_parabolic(c, art, log);
    return detail::run_sweep(c, art, log);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const DomainError& e) {
    err << "precondition error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const SizeError& e) {
    err << "precondition error: " << e.what() << "\n";
    return exit_precondition;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "usage error: cannot write artifacts: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace biharm
