// bogolab: exact and approximate ground states of a 1D trapped Bose gas
// with contact interactions.
//
// Subcommands:
//   exact       lowest eigenpairs of the full Hamiltonian on the Fock basis
//   condensate  mean-field condensate orbital
//   bogoliubov  quadratic fluctuation spectrum around the orbital
//   compare     exact vs approximate observables at one coupling
//   sweep       the same comparison over a coupling grid
//
// Exit codes: 0 success, 2 configuration error, 3 capacity exceeded,
// 4 numerical failure (non-convergence or instability), 5 I/O failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bogolab/config.hpp"
#include "bogolab/errors.hpp"
#include "bogolab/report.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "Path to a key = value config file");
  sub->add_option("--set", args.overrides, "Override a config key, e.g. --set coupling=0.2")
      ->take_all();
}

bogolab::RunConfig build_config(const CommonArgs& args) {
  bogolab::RunConfig config;
  if (!args.config_path.empty()) {
    config = bogolab::load_config_file(args.config_path);
  }
  for (const auto& assignment : args.overrides) {
    bogolab::apply_override(config, assignment);
  }
  return config;
}

bool use_json(const bogolab::RunConfig& config) { return config.output_format == "json"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states of trapped 1D bosons with contact interactions"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* cmd_exact = app.add_subcommand("exact", "Exact lowest eigenpairs");
  CLI::App* cmd_condensate = app.add_subcommand("condensate", "Mean-field condensate orbital");
  CLI::App* cmd_bogoliubov =
      app.add_subcommand("bogoliubov", "Quadratic fluctuation spectrum");
  CLI::App* cmd_compare =
      app.add_subcommand("compare", "Exact vs approximate observables at one coupling");
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "Exact vs approximate observables over a coupling grid");
  for (CLI::App* sub : {cmd_exact, cmd_condensate, cmd_bogoliubov, cmd_compare, cmd_sweep}) {
    add_common_options(sub, args);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    bogolab::RunConfig config = build_config(args);

    if (cmd_exact->parsed()) {
      const bogolab::ExactSummary summary = bogolab::run_exact(config);
      bogolab::write_output(
          use_json(config) ? bogolab::exact_to_json(summary) : bogolab::exact_to_csv(summary),
          config);
    } else if (cmd_condensate->parsed()) {
      const bogolab::CondensateOrbital orbital = bogolab::run_condensate(config);
      const bogolab::GpEnergyParts parts = bogolab::condensate_parts(config, orbital);
      bogolab::write_output(
          use_json(config)
              ? bogolab::condensate_to_json(orbital, parts, config.n_particles)
              : bogolab::condensate_to_csv(orbital, parts, config.n_particles),
          config);
    } else if (cmd_bogoliubov->parsed()) {
      const bogolab::BogoliubovReport report = bogolab::run_bogoliubov(config);
      bogolab::write_output(
          use_json(config) ? bogolab::bogoliubov_to_json(report)
                           : bogolab::bogoliubov_to_csv(report),
          config);
    } else if (cmd_compare->parsed()) {
      bogolab::RunConfig point = config;
      point.coupling_steps = 0;  // compare always runs the single configured coupling
      bogolab::emit(bogolab::run_compare(point), point);
    } else if (cmd_sweep->parsed()) {
      if (config.coupling_steps < 1) {
        throw bogolab::ConfigError(
            "sweep requires coupling_steps >= 1 (plus coupling_start / coupling_stop)");
      }
      bogolab::emit(bogolab::run_compare(config), config);
    }
    return 0;
  } catch (const bogolab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const bogolab::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const bogolab::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return 4;
  } catch (const bogolab::InstabilityError& e) {
    std::cerr << "instability error: " << e.what() << '\n';
    return 4;
  } catch (const bogolab::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
