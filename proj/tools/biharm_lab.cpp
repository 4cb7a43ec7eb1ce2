// biharm_lab: command-line front end for the solvers and verifiers.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biharm/cli.hpp"

namespace {

using biharm::RunConfig;

struct Binding {
  CLI::Option* option;
  std::function<void(RunConfig&, const RunConfig&)> copy;
};

class FlagSet {
 public:
  explicit FlagSet(RunConfig& parsed) : parsed_(parsed) {}

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, T RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_option(name, parsed_.*field, help);
    bindings_.push_back({opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, bool RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_flag(name, parsed_.*field, help);
    bindings_.push_back({opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
    return opt;
  }

  void apply(RunConfig& dst) const {
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) b.copy(dst, parsed_);
    }
  }

 private:
  RunConfig& parsed_;
  std::vector<Binding> bindings_;
};

void add_output(FlagSet& fs, CLI::App* app) {
  fs.add(app, "--out", &RunConfig::out, "output directory");
  fs.add(app, "--format", &RunConfig::formats, "artifact formats: csv, json")->delimiter(',');
  fs.add(app, "--tol", &RunConfig::tol, "verification tolerance override");
}

void add_grid(FlagSet& fs, CLI::App* app) {
  fs.add(app, "--n", &RunConfig::n, "dimension (>= 3)");
  fs.add(app, "--r-max", &RunConfig::r_max, "window radius");
  fs.add(app, "--h", &RunConfig::h, "grid spacing (default r_max/4096)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biharm_lab: solutions and pointwise inequality checks for Delta^2 u = -u^{-q} and related systems"};
  app.require_subcommand(0, 1);
  app.set_help_flag("--help", "print this help");  // -h is taken by the grid spacing

  RunConfig parsed;
  FlagSet fs(parsed);
  std::string config_path;
  bool dump_config = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_flag("--dump-config", dump_config, "print the effective configuration and exit");

  auto* region = app.add_subcommand("region", "admissibility region and coefficients");
  add_grid(fs, region);
  fs.add(region, "--q", &RunConfig::q, "exponent q > 1");
  fs.add(region, "--alpha", &RunConfig::alpha, "alpha");
  fs.add(region, "--beta", &RunConfig::beta, "beta (default beta_max)");
  fs.add(region, "--gamma", &RunConfig::gamma, "gamma");
  add_output(fs, region);

  auto* solve = app.add_subcommand("solve-biharmonic", "exact or shooting solution of Delta^2 u = -u^{-q}");
  add_grid(fs, solve);
  fs.add(solve, "--q", &RunConfig::q, "exponent q > 1");
  fs.flag(solve, "--exact", &RunConfig::exact, "closed-form n = 3, q = 7 solution");
  fs.add(solve, "--u0", &RunConfig::u0, "u(0) (default 1)");
  fs.add(solve, "--z0", &RunConfig::z0, "Delta u(0)");
  add_output(fs, solve);

  auto* verify = app.add_subcommand("verify", "pointwise inequality checks on a biharmonic profile");
  add_grid(fs, verify);
  fs.add(verify, "--q", &RunConfig::q, "exponent q > 1");
  fs.flag(verify, "--exact", &RunConfig::exact, "closed-form n = 3, q = 7 solution");
  fs.add(verify, "--u0", &RunConfig::u0, "u(0) (default 1)");
  fs.add(verify, "--z0", &RunConfig::z0, "Delta u(0)");
  fs.add(verify, "--alpha", &RunConfig::alpha, "alpha");
  fs.add(verify, "--beta", &RunConfig::beta, "beta (default beta_max)");
  fs.add(verify, "--gamma", &RunConfig::gamma, "gamma for the weighted check");
  fs.add(verify, "--check", &RunConfig::check,
         "weak | gradient | half-alpha | half-gradient | auxiliary | identity | weighted | hessian | curvature | all");
  fs.add(verify, "--corollary", &RunConfig::corollary, "1.2 (alpha = 1/2 estimate) or 1.3 (half-gradient estimate)");
  add_output(fs, verify);

  auto* system = app.add_subcommand("solve-system", "radial solution of Delta u = v^r, Delta v = -u^{-q}");
  add_grid(fs, system);
  fs.add(system, "--q", &RunConfig::q, "exponent q > 1");
  fs.add(system, "--r-exp", &RunConfig::r_exp, "exponent r > 0");
  fs.flag(system, "--exact", &RunConfig::exact, "r = 1 data of the closed-form solution");
  fs.add(system, "--u0", &RunConfig::u0, "u(0) (default 1)");
  fs.add(system, "--v0", &RunConfig::v0, "v(0)");
  add_output(fs, system);

  auto* parabolic = app.add_subcommand("simulate-parabolic", "u_t - Delta u = v^r, v_t - Delta v = u^p");
  fs.add(parabolic, "--p-exp", &RunConfig::p_exp, "exponent p");
  fs.add(parabolic, "--r-exp", &RunConfig::r_exp, "exponent r");
  fs.add(parabolic, "--geometry", &RunConfig::geometry, "periodic | radial");
  fs.add(parabolic, "--nodes", &RunConfig::nodes, "spatial nodes (periodic) or intervals (radial)");
  fs.add(parabolic, "--length", &RunConfig::length, "periodic box length");
  fs.add(parabolic, "--n", &RunConfig::n, "dimension of the radial ball");
  fs.add(parabolic, "--r-max", &RunConfig::r_max, "radius of the radial ball");
  fs.add(parabolic, "--initial", &RunConfig::initial, "perturbed | homogeneous | equality");
  fs.add(parabolic, "--amplitude", &RunConfig::amplitude, "relative perturbation amplitude");
  fs.add(parabolic, "--T", &RunConfig::T, "final time");
  fs.add(parabolic, "--time-intervals", &RunConfig::time_intervals, "snapshot intervals on [0, T]");
  fs.add(parabolic, "--csv-stride", &RunConfig::csv_stride, "write every k-th snapshot to CSV");
  fs.add(parabolic, "--dt-max", &RunConfig::dt_max, "largest time step");
  fs.add(parabolic, "--samples", &RunConfig::samples, "random samples for the scalar inequalities");
  fs.add(parabolic, "--seed", &RunConfig::seed, "sampling seed");
  fs.add(parabolic, "--reaction", &RunConfig::reaction, "reaction terms on (true) or off (false)");
  add_output(fs, parabolic);

  auto* sweep = app.add_subcommand("sweep", "parameter sweeps with a CSV matrix of verdicts");
  fs.add(sweep, "--module", &RunConfig::module, "region | biharmonic | lane-emden | parabolic");
  fs.add(sweep, "--n", &RunConfig::n_list, "dimensions")->delimiter(',');
  fs.add(sweep, "--q", &RunConfig::q_list, "q values")->delimiter(',');
  fs.add(sweep, "--r,--r-exp", &RunConfig::r_list, "r values")->delimiter(',');
  fs.add(sweep, "--p-exp", &RunConfig::p_list, "p values")->delimiter(',');
  fs.add(sweep, "--alpha", &RunConfig::alpha_list, "alpha values")->delimiter(',');
  fs.add(sweep, "--targets", &RunConfig::targets, "shooting targets per case");
  fs.add(sweep, "--u0", &RunConfig::u0, "u(0) for shooting (default 1)");
  fs.add(sweep, "--r-max", &RunConfig::r_max, "window radius");
  fs.add(sweep, "--h", &RunConfig::h, "grid spacing");
  fs.add(sweep, "--T", &RunConfig::T, "parabolic final time");
  fs.add(sweep, "--time-intervals", &RunConfig::time_intervals, "parabolic snapshot intervals");
  fs.add(sweep, "--samples", &RunConfig::samples, "random samples for the scalar inequalities");
  fs.add(sweep, "--seed", &RunConfig::seed, "sampling seed");
  add_output(fs, sweep);

  for (auto* sub : app.get_subcommands({})) {
    sub->set_help_flag("--help", "print this help");
    sub->add_option("--config", config_path, "JSON run configuration");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? biharm::exit_ok : biharm::exit_usage;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = biharm::load_config(config_path);
  } catch (const biharm::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return biharm::exit_usage;
  }
  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  fs.apply(config);

  if (dump_config) {
    std::cout << biharm::to_json(config).dump(2) << "\n";
    return biharm::exit_ok;
  }
  if (config.command.empty()) {
    std::cerr << "usage error: no command given\n" << app.help();
    return biharm::exit_usage;
  }
  return biharm::run(config);
}
