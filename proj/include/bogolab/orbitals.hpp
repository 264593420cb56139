#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bogolab/errors.hpp"

namespace bogolab {

/// Single-particle energy of trap level n in units of the trap quantum:
/// E_n = n + 1/2.
double mode_energy(int n);

/// Value of the normalized harmonic-oscillator eigenfunction phi_n at x
/// (dimensionless oscillator coordinate).
double orbital_value(int n, double x);

/// phi_0(x) .. phi_{n_max}(x) in one sweep of the three-term recurrence.
Eigen::VectorXd orbital_column(int n_max, double x);

/// Gauss rule for integrals of the form  integral p(x) exp(-alpha x^2) dx.
/// Exact whenever p is a polynomial with degree(p) <= max_degree.
struct QuadratureRule {
  Eigen::VectorXd nodes;    // strictly increasing
  Eigen::VectorXd weights;  // all positive
  double alpha = 1.0;
  int max_degree = 0;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Builds the smallest Gauss rule exact to at least `min_degree` for the
/// weight exp(-alpha x^2).  Throws Error for alpha <= 0 or a degree beyond
/// the supported node-generation range.
QuadratureRule build_quadrature(double alpha, int min_degree);

/// Two-body contact matrix elements in the trap eigenbasis:
///   I[i,j,k,l] = integral phi_i(x) phi_j(x) phi_k(x) phi_l(x) dx,
/// fully symmetric under any index permutation and zero whenever
/// i + j + k + l is odd.
class InteractionTensor {
 public:
  /// Computes all elements for modes 0..mode_count-1.  `quadrature_nodes`
  /// selects the rule size; 0 picks the smallest rule that integrates the
  /// quartic products exactly.  Throws Error if an explicit node count is
  /// too small for exactness.
  static InteractionTensor compute(int mode_count, int quadrature_nodes = 0);

  int mode_count() const { return mode_count_; }

  double operator()(int i, int j, int k, int l) const {
    return values_[flat_index(i, j, k, l)];
  }

  const std::vector<double>& values() const { return values_; }

 private:
  InteractionTensor() = default;

  std::size_t flat_index(int i, int j, int k, int l) const {
    const std::size_t m = static_cast<std::size_t>(mode_count_);
    return ((static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
            static_cast<std::size_t>(k)) *
               m +
           static_cast<std::size_t>(l);
  }

  int mode_count_ = 0;
  std::vector<double> values_;
};

}  // namespace bogolab
