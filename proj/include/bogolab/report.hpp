#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bogolab/bogoliubov.hpp"
#include "bogolab/config.hpp"
#include "bogolab/exact.hpp"

namespace bogolab {

/// One parameter point of the exact-vs-approximate comparison table.
struct ComparisonRow {
  double g = 0.0;
  int n_particles = 0;
  int modes = 0;
  double e_exact = 0.0;
  double e_gp = 0.0;
  double e_bog = 0.0;
  double gap1_exact = 0.0;
  double eps1_bog = 0.0;
  double depletion_bog = 0.0;
  double fc_exact = 0.0;
  double fc_bog = 0.0;
  double mu = 0.0;
  std::string status = "ok";  // or "capacity" / "no_convergence" / "unstable"
};

/// Lowest part of the exact spectrum plus derived ground-state observables.
struct ExactSummary {
  std::uint64_t dimension = 0;
  std::vector<double> energies;
  std::vector<double> residuals;
  double gap1 = 0.0;
  double fc = 0.0;
};

/// Locale-independent shortest-style formatting with 12 significant digits;
/// used for every number the tool writes.
std::string format_number(double value);

/// Coupling values visited by a sweep (linear grid, endpoints included);
/// a single-point run yields just {coupling}.
std::vector<double> coupling_grid(const RunConfig& config);

ExactSummary run_exact(const RunConfig& config);
CondensateOrbital run_condensate(const RunConfig& config);
BogoliubovReport run_bogoliubov(const RunConfig& config);

/// Exact + mean-field + fluctuation comparison over the coupling grid.
/// Rows keep grid order.  Per-point solver failures are recorded in the
/// row's status column instead of aborting the whole table; the worker
/// count is capped by the BOGOLAB_THREADS environment variable.
std::vector<ComparisonRow> run_compare(const RunConfig& config);

std::string rows_to_csv(const std::vector<ComparisonRow>& rows);
std::string rows_to_json(const std::vector<ComparisonRow>& rows);

/// Energy split of a solved orbital (for the virial diagnostic).
GpEnergyParts condensate_parts(const RunConfig& config, const CondensateOrbital& orbital);

std::string exact_to_csv(const ExactSummary& summary);
std::string exact_to_json(const ExactSummary& summary);
std::string condensate_to_csv(const CondensateOrbital& orbital, const GpEnergyParts& parts,
                              int n_particles);
std::string condensate_to_json(const CondensateOrbital& orbital, const GpEnergyParts& parts,
                               int n_particles);
std::string bogoliubov_to_csv(const BogoliubovReport& report);
std::string bogoliubov_to_json(const BogoliubovReport& report);

/// Renders rows in the configured format and writes them to the configured
/// path (stdout when empty).  Refuses an empty table; IoError when the file
/// cannot be written.
void emit(const std::vector<ComparisonRow>& rows, const RunConfig& config);

/// Writes any pre-rendered document to config.output_path or stdout.
void write_output(const std::string& content, const RunConfig& config);

}  // namespace bogolab
