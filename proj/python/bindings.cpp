// Python bindings: a thin veneer over the C++ core.  Occupation vectors
// cross the boundary as plain lists of ints; matrices and vectors as numpy
// arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bogolab/bogoliubov.hpp"
#include "bogolab/config.hpp"
#include "bogolab/errors.hpp"
#include "bogolab/exact.hpp"
#include "bogolab/fock.hpp"
#include "bogolab/hamiltonian.hpp"
#include "bogolab/orbitals.hpp"
#include "bogolab/report.hpp"

namespace py = pybind11;
using namespace bogolab;

namespace {

InteractionWeight weight_from_string(const std::string& name) {
  if (name == "N") return InteractionWeight::kParticleNumber;
  if (name == "N-1") return InteractionWeight::kParticleNumberMinusOne;
  throw ConfigError("interaction weight convention must be 'N' or 'N-1', got '" + name + "'");
}

GpOptions make_gp_options(double tol, int max_iter, const std::string& weight) {
  GpOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  options.weight = weight_from_string(weight);
  return options;
}

py::object ladder_result(const std::optional<LadderTerm>& term) {
  if (!term) return py::none();
  return py::make_tuple(term->coefficient, term->state.counts());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and approximate ground states of trapped 1D bosons";

  py::register_exception<Error>(m, "BogolabError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "BogolabConfigError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "BogolabCapacityError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "BogolabConvergenceError", PyExc_RuntimeError);
  py::register_exception<InstabilityError>(m, "BogolabInstabilityError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "BogolabIoError", PyExc_OSError);

  // ---- Fock space ----
  m.def("fock_dimension", &fock_dimension, py::arg("n_particles"), py::arg("modes"));

  py::class_<FockBasis>(m, "FockBasis")
      .def_static(
          "enumerate",
          [](int n, int modes, std::uint64_t max_states) {
            return FockBasis::enumerate(n, modes, max_states);
          },
          py::arg("n_particles"), py::arg("modes"),
          py::arg("max_states") = FockBasis::kDefaultCapacity)
      .def_property_readonly("n_particles", &FockBasis::total_particles)
      .def_property_readonly("modes", &FockBasis::mode_count)
      .def("__len__", &FockBasis::size)
      .def("state",
           [](const FockBasis& basis, std::size_t index) {
             if (index >= basis.size()) throw py::index_error();
             return basis.state(index).counts();
           },
           py::arg("index"))
      .def("index_of",
           [](const FockBasis& basis, const std::vector<int>& counts) {
             return basis.index_of(OccupationVector(counts));
           },
           py::arg("counts"))
      .def("find",
           [](const FockBasis& basis, const std::vector<int>& counts) -> py::object {
             const auto result = basis.find(OccupationVector(counts));
             if (!result) return py::none();
             return py::cast(*result);
           },
           py::arg("counts"));

  m.def(
      "apply_annihilate",
      [](int mode, const std::vector<int>& counts) {
        return ladder_result(apply_annihilate(mode, OccupationVector(counts)));
      },
      py::arg("mode"), py::arg("counts"));
  m.def(
      "apply_create",
      [](int mode, const std::vector<int>& counts) {
        const LadderTerm term = apply_create(mode, OccupationVector(counts));
        return py::make_tuple(term.coefficient, term.state.counts());
      },
      py::arg("mode"), py::arg("counts"));
  m.def(
      "apply_pair_string",
      [](int create_i, int create_j, int annihilate_k, int annihilate_l,
         const std::vector<int>& counts) {
        return ladder_result(
            apply_pair_string(create_i, create_j, annihilate_k, annihilate_l,
                              OccupationVector(counts)));
      },
      py::arg("create_i"), py::arg("create_j"), py::arg("annihilate_k"),
      py::arg("annihilate_l"), py::arg("counts"));

  // ---- Orbitals and interaction tensor ----
  m.def("mode_energy", &mode_energy, py::arg("n"));
  m.def("orbital_value", &orbital_value, py::arg("n"), py::arg("x"));

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("alpha", &QuadratureRule::alpha)
      .def_readonly("max_degree", &QuadratureRule::max_degree)
      .def("__len__", &QuadratureRule::size);
  m.def("build_quadrature", &build_quadrature, py::arg("alpha"), py::arg("min_degree"));

  py::class_<InteractionTensor>(m, "InteractionTensor")
      .def_property_readonly("modes", &InteractionTensor::mode_count)
      .def("__call__", &InteractionTensor::operator(), py::arg("i"), py::arg("j"),
           py::arg("k"), py::arg("l"));
  m.def("interaction_tensor", &InteractionTensor::compute, py::arg("modes"),
        py::arg("quadrature_nodes") = 0);

  // ---- Hamiltonian assembly ----
  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](int n_particles, int modes, double coupling) {
             return ModelParams{n_particles, modes, coupling};
           }),
           py::arg("n_particles"), py::arg("modes"), py::arg("coupling"))
      .def_readwrite("n_particles", &ModelParams::n_particles)
      .def_readwrite("modes", &ModelParams::modes)
      .def_readwrite("coupling", &ModelParams::coupling);

  py::class_<SparseOperator>(m, "SparseOperator")
      .def_property_readonly("dimension", &SparseOperator::dimension)
      .def_property_readonly("nnz", &SparseOperator::nonzero_count)
      .def("apply",
           [](const SparseOperator& op, const Eigen::VectorXd& x) { return op.apply(x); },
           py::arg("x"))
      .def("to_dense", &SparseOperator::to_dense)
      .def("symmetry_defect", &SparseOperator::symmetry_defect);

  m.def("assemble_trap", &assemble_trap, py::arg("basis"));
  m.def("assemble_interaction", &assemble_interaction, py::arg("basis"), py::arg("tensor"));
  m.def("assemble_hamiltonian", &assemble_hamiltonian, py::arg("params"), py::arg("basis"),
        py::arg("tensor"));

  // ---- Exact diagonalization ----
  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_readonly("eigenvalues", &SpectrumResult::eigenvalues)
      .def_readonly("eigenvectors", &SpectrumResult::eigenvectors)
      .def_readonly("residual_norms", &SpectrumResult::residual_norms);

  m.def(
      "solve_lowest_k",
      [](const SparseOperator& op, int k, double tol, std::size_t dense_threshold,
         bool force_iterative, std::uint64_t seed) {
        SolverOptions options;
        options.tol = tol;
        options.dense_threshold = dense_threshold;
        options.force_iterative = force_iterative;
        options.seed = seed;
        return solve_lowest_k(op, k, options);
      },
      py::arg("op"), py::arg("k"), py::arg("tol") = 0.0, py::arg("dense_threshold") = 5000,
      py::arg("force_iterative") = false, py::arg("seed") = 12345);
  m.def(
      "solve_ground",
      [](const SparseOperator& op) { return solve_ground(op); }, py::arg("op"));

  m.def("one_body_density_matrix", &one_body_density_matrix, py::arg("basis"),
        py::arg("amplitudes"));
  m.def("condensate_fraction", &condensate_fraction, py::arg("rho"), py::arg("n_particles"));
  m.def("density_profile", &density_profile, py::arg("rho"), py::arg("points"));

  // ---- Mean field and fluctuations ----
  py::class_<CondensateOrbital>(m, "CondensateOrbital")
      .def_readonly("coeffs", &CondensateOrbital::coeffs)
      .def_readonly("mu", &CondensateOrbital::mu)
      .def_readonly("energy_per_particle", &CondensateOrbital::energy_per_particle)
      .def_readonly("residual", &CondensateOrbital::residual)
      .def_readonly("iterations", &CondensateOrbital::iterations)
      .def_readonly("converged", &CondensateOrbital::converged);

  py::class_<GpEnergyParts>(m, "GpEnergyParts")
      .def_readonly("kinetic", &GpEnergyParts::kinetic)
      .def_readonly("trap", &GpEnergyParts::trap)
      .def_readonly("interaction", &GpEnergyParts::interaction)
      .def("total", &GpEnergyParts::total)
      .def("virial_defect", &GpEnergyParts::virial_defect);

  m.def(
      "gp_energy",
      [](const ModelParams& params, const InteractionTensor& tensor,
         const Eigen::VectorXd& coeffs, const std::string& weight) {
        return gp_energy(params, tensor, coeffs, weight_from_string(weight));
      },
      py::arg("params"), py::arg("tensor"), py::arg("coeffs"), py::arg("weight") = "N");
  m.def(
      "gp_gradient",
      [](const ModelParams& params, const InteractionTensor& tensor,
         const Eigen::VectorXd& coeffs, const std::string& weight) {
        return gp_gradient(params, tensor, coeffs, weight_from_string(weight));
      },
      py::arg("params"), py::arg("tensor"), py::arg("coeffs"), py::arg("weight") = "N");
  m.def(
      "gp_energy_parts",
      [](const ModelParams& params, const InteractionTensor& tensor,
         const Eigen::VectorXd& coeffs, const std::string& weight) {
        return gp_energy_parts(params, tensor, coeffs, weight_from_string(weight));
      },
      py::arg("params"), py::arg("tensor"), py::arg("coeffs"), py::arg("weight") = "N");
  m.def(
      "solve_condensate",
      [](const ModelParams& params, const InteractionTensor& tensor, double tol, int max_iter,
         const std::string& weight) {
        return solve_condensate(params, tensor, make_gp_options(tol, max_iter, weight));
      },
      py::arg("params"), py::arg("tensor"), py::arg("tol") = 1e-10,
      py::arg("max_iter") = 50000, py::arg("weight") = "N");
  m.def("fluctuation_basis", &fluctuation_basis, py::arg("coeffs"));

  py::class_<QuadraticForm>(m, "QuadraticForm")
      .def_readonly("A", &QuadraticForm::A)
      .def_readonly("B", &QuadraticForm::B)
      .def_readonly("c0", &QuadraticForm::c0)
      .def_readonly("fluct_basis", &QuadraticForm::fluct_basis);

  m.def(
      "build_quadratic",
      [](const ModelParams& params, const InteractionTensor& tensor,
         const CondensateOrbital& orbital, double tol, const std::string& weight) {
        return build_quadratic(params, tensor, orbital, make_gp_options(tol, 1, weight));
      },
      py::arg("params"), py::arg("tensor"), py::arg("orbital"), py::arg("tol") = 1e-10,
      py::arg("weight") = "N");

  py::class_<BogoliubovSpectrum>(m, "BogoliubovSpectrum")
      .def_readonly("epsilons", &BogoliubovSpectrum::epsilons)
      .def_readonly("u", &BogoliubovSpectrum::u)
      .def_readonly("v", &BogoliubovSpectrum::v)
      .def_readonly("goldstone_count", &BogoliubovSpectrum::goldstone_count)
      .def_readonly("depletion", &BogoliubovSpectrum::depletion)
      .def_readonly("ground_energy", &BogoliubovSpectrum::ground_energy);

  m.def(
      "diagonalize_quadratic",
      [](const QuadraticForm& form, double goldstone_tol, bool force_general) {
        DiagonalizeOptions options;
        options.goldstone_tol = goldstone_tol;
        options.force_general = force_general;
        return diagonalize_quadratic(form, options);
      },
      py::arg("form"), py::arg("goldstone_tol") = 1e-8, py::arg("force_general") = false);

  py::class_<BogoliubovReport>(m, "BogoliubovReport")
      .def_readonly("mu", &BogoliubovReport::mu)
      .def_readonly("energy_per_particle", &BogoliubovReport::energy_per_particle)
      .def_readonly("e_gp", &BogoliubovReport::e_gp)
      .def_readonly("e_bog", &BogoliubovReport::e_bog)
      .def_readonly("depletion", &BogoliubovReport::depletion)
      .def_readonly("condensate_fraction", &BogoliubovReport::condensate_fraction)
      .def_readonly("epsilons", &BogoliubovReport::epsilons)
      .def_readonly("goldstone_count", &BogoliubovReport::goldstone_count);

  m.def(
      "bogoliubov_report",
      [](const ModelParams& params, const InteractionTensor& tensor, double tol, int max_iter,
         const std::string& weight, double goldstone_tol) {
        DiagonalizeOptions diag;
        diag.goldstone_tol = goldstone_tol;
        return bogoliubov_report(params, tensor, make_gp_options(tol, max_iter, weight), diag);
      },
      py::arg("params"), py::arg("tensor"), py::arg("tol") = 1e-10,
      py::arg("max_iter") = 50000, py::arg("weight") = "N",
      py::arg("goldstone_tol") = 1e-8);

  // ---- Config and reporting ----
  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("n_particles", &RunConfig::n_particles)
      .def_readwrite("modes", &RunConfig::modes)
      .def_readwrite("coupling", &RunConfig::coupling)
      .def_readwrite("coupling_start", &RunConfig::coupling_start)
      .def_readwrite("coupling_stop", &RunConfig::coupling_stop)
      .def_readwrite("coupling_steps", &RunConfig::coupling_steps)
      .def_readwrite("interaction_weight_convention",
                     &RunConfig::interaction_weight_convention)
      .def_readwrite("quadrature_nodes", &RunConfig::quadrature_nodes)
      .def_readwrite("gp_tol", &RunConfig::gp_tol)
      .def_readwrite("gp_max_iter", &RunConfig::gp_max_iter)
      .def_readwrite("eig_tol", &RunConfig::eig_tol)
      .def_readwrite("lowest_k", &RunConfig::lowest_k)
      .def_readwrite("goldstone_tol", &RunConfig::goldstone_tol)
      .def_readwrite("output_format", &RunConfig::output_format)
      .def_readwrite("output_path", &RunConfig::output_path)
      .def_readwrite("seed", &RunConfig::seed);

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("coupling_grid", &coupling_grid, py::arg("config"));
  m.def("format_number", &format_number, py::arg("value"));

  py::class_<ExactSummary>(m, "ExactSummary")
      .def_readonly("dimension", &ExactSummary::dimension)
      .def_readonly("energies", &ExactSummary::energies)
      .def_readonly("residuals", &ExactSummary::residuals)
      .def_readonly("gap1", &ExactSummary::gap1)
      .def_readonly("fc", &ExactSummary::fc);

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("g", &ComparisonRow::g)
      .def_readonly("n_particles", &ComparisonRow::n_particles)
      .def_readonly("modes", &ComparisonRow::modes)
      .def_readonly("e_exact", &ComparisonRow::e_exact)
      .def_readonly("e_gp", &ComparisonRow::e_gp)
      .def_readonly("e_bog", &ComparisonRow::e_bog)
      .def_readonly("gap1_exact", &ComparisonRow::gap1_exact)
      .def_readonly("eps1_bog", &ComparisonRow::eps1_bog)
      .def_readonly("depletion_bog", &ComparisonRow::depletion_bog)
      .def_readonly("fc_exact", &ComparisonRow::fc_exact)
      .def_readonly("fc_bog", &ComparisonRow::fc_bog)
      .def_readonly("mu", &ComparisonRow::mu)
      .def_readonly("status", &ComparisonRow::status);

  m.def("run_exact", &run_exact, py::arg("config"));
  m.def("run_condensate", &run_condensate, py::arg("config"));
  m.def("run_bogoliubov", &run_bogoliubov, py::arg("config"));
  m.def("run_compare", &run_compare, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("rows_to_csv", &rows_to_csv, py::arg("rows"));
  m.def("rows_to_json", &rows_to_json, py::arg("rows"));
}
