#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bogolab/errors.hpp"
#include "bogolab/hamiltonian.hpp"
#include "bogolab/orbitals.hpp"

namespace bogolab {

/// Factor kappa multiplying the coupling in the mean-field equations:
/// kappa = N, or kappa = N - 1 which improves agreement with exact
/// diagonalization at small particle numbers.
enum class InteractionWeight {
  kParticleNumber,
  kParticleNumberMinusOne,
};

double interaction_weight(InteractionWeight weight, int n_particles);

struct GpOptions {
  double tol = 1e-10;  // residual target ||H_gp c - mu c||
  int max_iter = 50000;
  InteractionWeight weight = InteractionWeight::kParticleNumber;
};

/// Converged condensate orbital in the trap eigenbasis.
struct CondensateOrbital {
  Eigen::VectorXd coeffs;  // unit norm
  double mu = 0.0;
  double energy_per_particle = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Kinetic, trap, and interaction contributions to the mean-field energy
/// per particle.
struct GpEnergyParts {
  double kinetic = 0.0;
  double trap = 0.0;
  double interaction = 0.0;

  double total() const { return kinetic + trap + interaction; }
  /// Scaling x -> lambda x makes the three parts stationary when
  /// 2 kinetic - 2 trap + interaction = 0; this returns that defect.
  double virial_defect() const { return 2.0 * kinetic - 2.0 * trap + interaction; }
};

/// Mean-field energy per particle
///   E[c] = sum_n E_n c_n^2 + (g kappa / 2) sum I[i,j,k,l] c_i c_j c_k c_l
/// for an arbitrary (not necessarily normalized) coefficient vector.
double gp_energy(const ModelParams& params, const InteractionTensor& tensor,
                 const Eigen::VectorXd& coeffs, InteractionWeight weight);

/// Gradient of gp_energy with respect to the coefficients.
Eigen::VectorXd gp_gradient(const ModelParams& params, const InteractionTensor& tensor,
                            const Eigen::VectorXd& coeffs, InteractionWeight weight);

/// Energy split of a unit-norm coefficient vector.
GpEnergyParts gp_energy_parts(const ModelParams& params, const InteractionTensor& tensor,
                              const Eigen::VectorXd& coeffs, InteractionWeight weight);

/// Minimizes E[c] over unit vectors by projected gradient descent.  Throws
/// ConvergenceError (with the best residual seen) when the budget runs out.
CondensateOrbital solve_condensate(const ModelParams& params, const InteractionTensor& tensor,
                                   const GpOptions& options = {});

/// Orthonormal completion of the condensate orbital: M-1 columns spanning
/// the fluctuation space, built by Gram-Schmidt over the trap modes in
/// fixed order.
Eigen::MatrixXd fluctuation_basis(const Eigen::VectorXd& coeffs);

/// Quadratic fluctuation energy
///   H_2 = c0 + sum_pq [ A_pq beta_p^dag beta_q
///                       + (B_pq / 2) (beta_p^dag beta_q^dag + h.c.) ]
/// in the fluctuation basis, obtained by replacing the condensate operator
/// with sqrt(n0) and expanding to second order in the remaining modes.
struct QuadraticForm {
  Eigen::MatrixXd A;            // symmetric (M-1) x (M-1)
  Eigen::MatrixXd B;            // symmetric (M-1) x (M-1)
  double c0 = 0.0;              // constant term
  Eigen::MatrixXd fluct_basis;  // M x (M-1), columns orthonormal, all ⊥ c
};

/// Builds the quadratic form around a converged orbital.  Verifies that the
/// linear term vanishes (it must at a stationary point); a linear
/// coefficient above 10x the orbital's residual tolerance aborts.
QuadraticForm build_quadratic(const ModelParams& params, const InteractionTensor& tensor,
                              const CondensateOrbital& orbital,
                              const GpOptions& options = {});

struct DiagonalizeOptions {
  /// Energies below this threshold count as zero modes and are excluded.
  double goldstone_tol = 1e-8;
  /// Skip the symmetric Cholesky reduction (mainly for testing parity with
  /// the general-eigensolver fallback).
  bool force_general = false;
};

/// Quasiparticle content of a quadratic form.
struct BogoliubovSpectrum {
  std::vector<double> epsilons;  // retained energies, ascending, all positive
  Eigen::MatrixXd u;             // (M-1) x retained
  Eigen::MatrixXd v;             // (M-1) x retained, u^T u - v^T v = 1 per mode
  int goldstone_count = 0;
  double depletion = 0.0;      // sum_j ||v_j||^2
  double ground_energy = 0.0;  // c0 + (1/2)(sum eps - tr A)
};

/// Diagonalizes the quadratic form by a symplectic transformation.  Throws
/// InstabilityError when the spectrum is complex or a mode has non-positive
/// symplectic norm (the fluctuation problem is then unstable and no
/// truncated ground state exists).
BogoliubovSpectrum diagonalize_quadratic(const QuadraticForm& form,
                                         const DiagonalizeOptions& options = {});

/// Full mean-field + fluctuation summary for one parameter point.
struct BogoliubovReport {
  double mu = 0.0;
  double energy_per_particle = 0.0;
  double e_gp = 0.0;   // N * energy_per_particle
  double e_bog = 0.0;  // ground energy including fluctuation correction
  double depletion = 0.0;
  double condensate_fraction = 0.0;  // 1 - depletion / N
  std::vector<double> epsilons;
  int goldstone_count = 0;
};

BogoliubovReport bogoliubov_report(const ModelParams& params, const InteractionTensor& tensor,
                                   const GpOptions& gp_options = {},
                                   const DiagonalizeOptions& diag_options = {});

}  // namespace bogolab
