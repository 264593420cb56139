#include "bogolab/report.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "bogolab/fock.hpp"
#include "bogolab/hamiltonian.hpp"
#include "bogolab/orbitals.hpp"

namespace bogolab {

namespace {

constexpr const char* kCompareHeader =
    "g,N,M,E_exact,E_gp,E_bog,gap1_exact,eps1_bog,depletion_bog,fc_exact,fc_bog,mu,status";

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

InteractionTensor tensor_for(const RunConfig& config) {
  try {
    return InteractionTensor::compute(config.modes, config.quadrature_nodes);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    // An undersized explicit node count is a configuration problem.
    throw ConfigError(e.what());
  }
}

SolverOptions solver_options(const RunConfig& config) {
  SolverOptions options;
  options.tol = config.eig_tol;
  options.seed = config.seed;
  return options;
}

GpOptions gp_options(const RunConfig& config) {
  GpOptions options;
  options.tol = config.gp_tol;
  options.max_iter = config.gp_max_iter;
  options.weight = weight_convention(config);
  return options;
}

void require_fluctuation_setup(const RunConfig& config) {
  if (config.modes < 2) {
    throw ConfigError("the fluctuation analysis requires modes >= 2");
  }
  if (config.n_particles < 1) {
    throw ConfigError("the fluctuation analysis requires n_particles >= 1");
  }
}

int worker_count(std::size_t points) {
  unsigned hardware = std::thread::hardware_concurrency();
  if (hardware == 0) hardware = 1;
  std::size_t cap = std::min<std::size_t>(points, hardware);
  if (const char* env = std::getenv("BOGOLAB_THREADS")) {
    const std::string value(env);
    long long parsed = 0;
    const auto result = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (result.ec != std::errc{} || result.ptr != value.data() + value.size() || parsed < 1) {
      throw ConfigError("BOGOLAB_THREADS must be a positive integer, got '" + value + "'");
    }
    cap = std::min<std::size_t>(cap, static_cast<std::size_t>(parsed));
  }
  return static_cast<int>(std::max<std::size_t>(1, cap));
}

std::string json_number(double value) {
  if (!std::isfinite(value)) return "null";
  return format_number(value);
}

void append_quantity(std::string& out, const std::string& name, const std::string& value) {
  out += name;
  out += ',';
  out += value;
  out += '\n';
}

std::string json_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += json_number(values[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buffer;
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                    std::chars_format::general, 12);
  if (result.ec != std::errc{}) {
    throw Error("number formatting failed");
  }
  return std::string(buffer.data(), result.ptr);
}

std::vector<double> coupling_grid(const RunConfig& config) {
  if (config.coupling_steps == 0) {
    return {config.coupling};
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(config.coupling_steps));
  if (config.coupling_steps == 1) {
    grid.push_back(config.coupling_start);
    return grid;
  }
  const double span = config.coupling_stop - config.coupling_start;
  for (int i = 0; i < config.coupling_steps; ++i) {
    grid.push_back(config.coupling_start +
                   span * static_cast<double>(i) / (config.coupling_steps - 1));
  }
  return grid;
}

ExactSummary run_exact(const RunConfig& config) {
  const FockBasis basis = FockBasis::enumerate(config.n_particles, config.modes);
  const InteractionTensor tensor = tensor_for(config);
  const ModelParams params{config.n_particles, config.modes, config.coupling};
  const SparseOperator hamiltonian = assemble_hamiltonian(params, basis, tensor);

  const int k = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(config.lowest_k), basis.size()));
  const SpectrumResult spectrum = solve_lowest_k(hamiltonian, k, solver_options(config));

  ExactSummary summary;
  summary.dimension = basis.size();
  summary.energies = spectrum.eigenvalues;
  summary.residuals = spectrum.residual_norms;
  summary.gap1 = k >= 2 ? spectrum.eigenvalues[1] - spectrum.eigenvalues[0] : kNan;
  if (config.n_particles >= 1) {
    const Eigen::MatrixXd rho = one_body_density_matrix(basis, spectrum.eigenvectors.col(0));
    summary.fc = condensate_fraction(rho, config.n_particles);
  } else {
    summary.fc = kNan;
  }
  return summary;
}

CondensateOrbital run_condensate(const RunConfig& config) {
  const InteractionTensor tensor = tensor_for(config);
  const ModelParams params{config.n_particles, config.modes, config.coupling};
  return solve_condensate(params, tensor, gp_options(config));
}

GpEnergyParts condensate_parts(const RunConfig& config, const CondensateOrbital& orbital) {
  const InteractionTensor tensor = tensor_for(config);
  const ModelParams params{config.n_particles, config.modes, config.coupling};
  return gp_energy_parts(params, tensor, orbital.coeffs, weight_convention(config));
}

BogoliubovReport run_bogoliubov(const RunConfig& config) {
  require_fluctuation_setup(config);
  const InteractionTensor tensor = tensor_for(config);
  const ModelParams params{config.n_particles, config.modes, config.coupling};
  DiagonalizeOptions diag;
  diag.goldstone_tol = config.goldstone_tol;
  return bogoliubov_report(params, tensor, gp_options(config), diag);
}

std::vector<ComparisonRow> run_compare(const RunConfig& config) {
  require_fluctuation_setup(config);
  const std::vector<double> grid = coupling_grid(config);

  std::vector<ComparisonRow> rows(grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].g = grid[i];
    rows[i].n_particles = config.n_particles;
    rows[i].modes = config.modes;
    rows[i].e_exact = kNan;
    rows[i].e_gp = kNan;
    rows[i].e_bog = kNan;
    rows[i].gap1_exact = kNan;
    rows[i].eps1_bog = kNan;
    rows[i].depletion_bog = kNan;
    rows[i].fc_exact = kNan;
    rows[i].fc_bog = kNan;
    rows[i].mu = kNan;
  }

  const InteractionTensor tensor = tensor_for(config);

  std::optional<FockBasis> basis;
  try {
    basis = FockBasis::enumerate(config.n_particles, config.modes);
  } catch (const CapacityError&) {
    for (auto& row : rows) row.status = "capacity";
    return rows;
  }
  const SparseOperator trap = assemble_trap(*basis);
  const SparseOperator interaction = assemble_interaction(*basis, tensor);

  const SolverOptions eig_options = solver_options(config);
  const GpOptions orbital_options = gp_options(config);
  DiagonalizeOptions diag;
  diag.goldstone_tol = config.goldstone_tol;

  auto compute_row = [&](std::size_t i) {
    ComparisonRow& row = rows[i];
    const double g = grid[i];
    const ModelParams params{config.n_particles, config.modes, g};
    try {
      const SparseOperator hamiltonian =
          g == 0.0 ? trap : trap.add_scaled(interaction, g);
      const int k = static_cast<int>(std::min<std::size_t>(
          static_cast<std::size_t>(std::max(config.lowest_k, 2)), basis->size()));
      const SpectrumResult spectrum = solve_lowest_k(hamiltonian, k, eig_options);
      row.e_exact = spectrum.eigenvalues[0];
      row.gap1_exact = k >= 2 ? spectrum.eigenvalues[1] - spectrum.eigenvalues[0] : kNan;
      const Eigen::MatrixXd rho =
          one_body_density_matrix(*basis, spectrum.eigenvectors.col(0));
      row.fc_exact = condensate_fraction(rho, config.n_particles);

      const CondensateOrbital orbital = solve_condensate(params, tensor, orbital_options);
      row.e_gp = config.n_particles * orbital.energy_per_particle;
      row.mu = orbital.mu;

      const QuadraticForm form = build_quadratic(params, tensor, orbital, orbital_options);
      const BogoliubovSpectrum fluct = diagonalize_quadratic(form, diag);
      row.e_bog = fluct.ground_energy;
      row.depletion_bog = fluct.depletion;
      row.fc_bog = 1.0 - fluct.depletion / config.n_particles;
      row.eps1_bog = fluct.epsilons.empty() ? kNan : fluct.epsilons.front();
      row.status = "ok";
    } catch (const CapacityError&) {
      row.status = "capacity";
    } catch (const InstabilityError&) {
      row.status = "unstable";
    } catch (const ConvergenceError&) {
      row.status = "no_convergence";
    }
  };

  const int workers = worker_count(rows.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) compute_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= rows.size()) break;
          compute_row(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = kCompareHeader;
  out += '\n';
  for (const auto& row : rows) {
    out += format_number(row.g);
    out += ',';
    out += std::to_string(row.n_particles);
    out += ',';
    out += std::to_string(row.modes);
    for (const double value : {row.e_exact, row.e_gp, row.e_bog, row.gap1_exact, row.eps1_bog,
                               row.depletion_bog, row.fc_exact, row.fc_bog, row.mu}) {
      out += ',';
      out += format_number(value);
    }
    out += ',';
    out += row.status;
    out += '\n';
  }
  return out;
}

std::string rows_to_json(const std::vector<ComparisonRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    out += "  {\"g\": " + json_number(row.g);
    out += ", \"N\": " + std::to_string(row.n_particles);
    out += ", \"M\": " + std::to_string(row.modes);
    out += ", \"E_exact\": " + json_number(row.e_exact);
    out += ", \"E_gp\": " + json_number(row.e_gp);
    out += ", \"E_bog\": " + json_number(row.e_bog);
    out += ", \"gap1_exact\": " + json_number(row.gap1_exact);
    out += ", \"eps1_bog\": " + json_number(row.eps1_bog);
    out += ", \"depletion_bog\": " + json_number(row.depletion_bog);
    out += ", \"fc_exact\": " + json_number(row.fc_exact);
    out += ", \"fc_bog\": " + json_number(row.fc_bog);
    out += ", \"mu\": " + json_number(row.mu);
    out += ", \"status\": \"" + row.status + "\"}";
    if (i + 1 < rows.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

std::string exact_to_csv(const ExactSummary& summary) {
  std::string out = "quantity,value\n";
  append_quantity(out, "dimension", std::to_string(summary.dimension));
  for (std::size_t i = 0; i < summary.energies.size(); ++i) {
    append_quantity(out, "energy_" + std::to_string(i), format_number(summary.energies[i]));
  }
  for (std::size_t i = 0; i < summary.residuals.size(); ++i) {
    append_quantity(out, "residual_" + std::to_string(i), format_number(summary.residuals[i]));
  }
  append_quantity(out, "gap1_exact", format_number(summary.gap1));
  append_quantity(out, "fc_exact", format_number(summary.fc));
  return out;
}

std::string exact_to_json(const ExactSummary& summary) {
  std::string out = "{\n";
  out += "  \"dimension\": " + std::to_string(summary.dimension) + ",\n";
  out += "  \"energies\": " + json_array(summary.energies) + ",\n";
  out += "  \"residuals\": " + json_array(summary.residuals) + ",\n";
  out += "  \"gap1_exact\": " + json_number(summary.gap1) + ",\n";
  out += "  \"fc_exact\": " + json_number(summary.fc) + "\n";
  out += "}\n";
  return out;
}

std::string condensate_to_csv(const CondensateOrbital& orbital, const GpEnergyParts& parts,
                              int n_particles) {
  std::string out = "quantity,value\n";
  append_quantity(out, "mu", format_number(orbital.mu));
  append_quantity(out, "energy_per_particle", format_number(orbital.energy_per_particle));
  append_quantity(out, "E_gp", format_number(n_particles * orbital.energy_per_particle));
  append_quantity(out, "residual", format_number(orbital.residual));
  append_quantity(out, "iterations", std::to_string(orbital.iterations));
  append_quantity(out, "kinetic", format_number(parts.kinetic));
  append_quantity(out, "trap", format_number(parts.trap));
  append_quantity(out, "interaction", format_number(parts.interaction));
  append_quantity(out, "virial_defect", format_number(parts.virial_defect()));
  for (Eigen::Index n = 0; n < orbital.coeffs.size(); ++n) {
    append_quantity(out, "coeff_" + std::to_string(n), format_number(orbital.coeffs[n]));
  }
  return out;
}

std::string condensate_to_json(const CondensateOrbital& orbital, const GpEnergyParts& parts,
                               int n_particles) {
  std::vector<double> coeffs(orbital.coeffs.data(), orbital.coeffs.data() + orbital.coeffs.size());
  std::string out = "{\n";
  out += "  \"mu\": " + json_number(orbital.mu) + ",\n";
  out += "  \"energy_per_particle\": " + json_number(orbital.energy_per_particle) + ",\n";
  out += "  \"E_gp\": " + json_number(n_particles * orbital.energy_per_particle) + ",\n";
  out += "  \"residual\": " + json_number(orbital.residual) + ",\n";
  out += "  \"iterations\": " + std::to_string(orbital.iterations) + ",\n";
  out += "  \"kinetic\": " + json_number(parts.kinetic) + ",\n";
  out += "  \"trap\": " + json_number(parts.trap) + ",\n";
  out += "  \"interaction\": " + json_number(parts.interaction) + ",\n";
  out += "  \"virial_defect\": " + json_number(parts.virial_defect()) + ",\n";
  out += "  \"coeffs\": " + json_array(coeffs) + "\n";
  out += "}\n";
  return out;
}

std::string bogoliubov_to_csv(const BogoliubovReport& report) {
  std::string out = "quantity,value\n";
  append_quantity(out, "mu", format_number(report.mu));
  append_quantity(out, "energy_per_particle", format_number(report.energy_per_particle));
  append_quantity(out, "E_gp", format_number(report.e_gp));
  append_quantity(out, "E_bog", format_number(report.e_bog));
  append_quantity(out, "depletion", format_number(report.depletion));
  append_quantity(out, "fc_bog", format_number(report.condensate_fraction));
  append_quantity(out, "goldstone_count", std::to_string(report.goldstone_count));
  for (std::size_t j = 0; j < report.epsilons.size(); ++j) {
    append_quantity(out, "epsilon_" + std::to_string(j), format_number(report.epsilons[j]));
  }
  return out;
}

std::string bogoliubov_to_json(const BogoliubovReport& report) {
  std::string out = "{\n";
  out += "  \"mu\": " + json_number(report.mu) + ",\n";
  out += "  \"energy_per_particle\": " + json_number(report.energy_per_particle) + ",\n";
  out += "  \"E_gp\": " + json_number(report.e_gp) + ",\n";
  out += "  \"E_bog\": " + json_number(report.e_bog) + ",\n";
  out += "  \"depletion\": " + json_number(report.depletion) + ",\n";
  out += "  \"fc_bog\": " + json_number(report.condensate_fraction) + ",\n";
  out += "  \"goldstone_count\": " + std::to_string(report.goldstone_count) + ",\n";
  out += "  \"epsilons\": " + json_array(report.epsilons) + "\n";
  out += "}\n";
  return out;
}

void emit(const std::vector<ComparisonRow>& rows, const RunConfig& config) {
  if (rows.empty()) {
    throw Error("refusing to write an empty comparison table");
  }
  const std::string content =
      config.output_format == "json" ? rows_to_json(rows) : rows_to_csv(rows);
  write_output(content, config);
}

void write_output(const std::string& content, const RunConfig& config) {
  if (config.output_path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open output file '" + config.output_path + "'");
  }
  file << content;
  if (!file) {
    throw IoError("failed while writing output file '" + config.output_path + "'");
  }
}

}  // namespace bogolab
