#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bogolab/errors.hpp"
#include "bogolab/fock.hpp"
#include "bogolab/hamiltonian.hpp"

namespace bogolab {

struct SolverOptions {
  /// Residual target for each eigenpair; 0 picks 1e-10 on the dense path
  /// and 1e-8 on the iterative path.
  double tol = 0.0;
  /// Dense full diagonalization is used up to this dimension.
  std::size_t dense_threshold = 5000;
  /// Skip the dense path even for small problems (mainly for testing).
  bool force_iterative = false;
  /// Seed for the iterative solver's starting vectors.
  std::uint64_t seed = 12345;
  /// Krylov subspace cap per eigenpair on the iterative path.
  int max_subspace = 400;
};

/// Lowest part of a spectrum: eigenvalues ascending, matching orthonormal
/// eigenvector columns, and the explicit residual norms ||H v - lambda v||.
struct SpectrumResult {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<double> residual_norms;
};

/// Computes the k lowest eigenpairs of a symmetric operator.  Throws
/// ConvergenceError if the iterative path cannot reach the tolerance.
SpectrumResult solve_lowest_k(const SparseOperator& op, int k, const SolverOptions& options = {});

/// Ground state only (k = 1).
SpectrumResult solve_ground(const SparseOperator& op, const SolverOptions& options = {});

/// One-body density matrix rho[i,j] = <b_i^dag b_j> in the given state.
/// Symmetric and positive semidefinite with trace N for a normalized state.
Eigen::MatrixXd one_body_density_matrix(const FockBasis& basis, const Eigen::VectorXd& amplitudes);

/// Largest eigenvalue of rho divided by the particle number: the occupied
/// fraction of the dominant natural orbital.
double condensate_fraction(const Eigen::MatrixXd& rho, int n_particles);

/// Spatial density n(x) = sum_ij rho[i,j] phi_i(x) phi_j(x) on given points.
Eigen::VectorXd density_profile(const Eigen::MatrixXd& rho, const Eigen::VectorXd& points);

}  // namespace bogolab
