#pragma once

#include <cstdint>
#include <string>

#include "bogolab/bogoliubov.hpp"
#include "bogolab/errors.hpp"

namespace bogolab {

/// Flat key = value run configuration shared by all CLI subcommands.
struct RunConfig {
  int n_particles = 4;
  int modes = 8;
  double coupling = 0.0;

  // Sweep grid; coupling_steps = 0 means "no sweep configured".
  double coupling_start = 0.0;
  double coupling_stop = 0.0;
  int coupling_steps = 0;

  std::string interaction_weight_convention = "N";  // "N" or "N-1"
  int quadrature_nodes = 0;                         // 0 = automatic
  double gp_tol = 1e-10;
  int gp_max_iter = 50000;
  double eig_tol = 0.0;  // 0 = solver default
  int lowest_k = 2;
  double goldstone_tol = 1e-8;
  std::string output_format = "csv";  // "csv" or "json"
  std::string output_path;            // empty = stdout
  std::uint64_t seed = 12345;
};

/// Parses config text: one `key = value` per line, `#` starts a comment,
/// blank lines ignored.  Unknown keys and malformed values raise ConfigError
/// naming the offending line.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file; IoError if it cannot be read.
RunConfig load_config_file(const std::string& path);

/// Applies a single `key=value` override on top of an existing config.
void apply_override(RunConfig& config, const std::string& assignment);

/// Maps the convention string onto the solver enum.
InteractionWeight weight_convention(const RunConfig& config);

}  // namespace bogolab
