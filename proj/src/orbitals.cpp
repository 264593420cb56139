#include "bogolab/orbitals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bogolab {

namespace {

constexpr int kMaxQuadratureNodes = 256;

const double kPi = std::acos(-1.0);

}  // namespace

double mode_energy(int n) {
  if (n < 0) {
    throw Error("mode index must be non-negative");
  }
  return static_cast<double>(n) + 0.5;
}

Eigen::VectorXd orbital_column(int n_max, double x) {
  if (n_max < 0) {
    throw Error("mode index must be non-negative");
  }
  Eigen::VectorXd phi(n_max + 1);
  phi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) {
    phi[1] = std::sqrt(2.0) * x * phi[0];
  }
  for (int n = 1; n < n_max; ++n) {
    phi[n + 1] = x * std::sqrt(2.0 / (n + 1.0)) * phi[n] -
                 std::sqrt(static_cast<double>(n) / (n + 1.0)) * phi[n - 1];
  }
  return phi;
}

double orbital_value(int n, double x) { return orbital_column(n, x)[n]; }

QuadratureRule build_quadrature(double alpha, int min_degree) {
  if (alpha <= 0.0) {
    throw Error("quadrature weight exponent alpha must be positive");
  }
  if (min_degree < 0) {
    throw Error("quadrature degree must be non-negative");
  }
  // An n-point Gauss rule is exact to degree 2n - 1.
  const int n = min_degree / 2 + 1;
  if (n > kMaxQuadratureNodes) {
    throw Error("requested quadrature degree exceeds the supported node count");
  }

  // Nodes and weights for weight exp(-y^2) from the symmetric tridiagonal
  // Jacobi matrix of the Hermite polynomials (diagonal 0, off-diagonal
  // sqrt(k/2)); the weights are sqrt(pi) times the squared first components
  // of the eigenvectors.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd subdiag(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) {
    subdiag[k - 1] = std::sqrt(0.5 * k);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag);
  if (solver.info() != Eigen::Success) {
    throw Error("quadrature node generation failed to converge");
  }

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.max_degree = 2 * n - 1;
  // Substituting y = sqrt(alpha) x maps the weight exp(-alpha x^2) onto the
  // Hermite weight and rescales both nodes and weights by 1/sqrt(alpha).
  const double scale = 1.0 / std::sqrt(alpha);
  rule.nodes = scale * solver.eigenvalues();
  rule.weights.resize(n);
  const double mu0 = std::sqrt(kPi);
  for (int q = 0; q < n; ++q) {
    const double first = solver.eigenvectors()(0, q);
    rule.weights[q] = scale * mu0 * first * first;
  }
  return rule;
}

InteractionTensor InteractionTensor::compute(int mode_count, int quadrature_nodes) {
  if (mode_count < 1) {
    throw Error("interaction tensor requires at least one mode");
  }
  if (quadrature_nodes < 0) {
    throw Error("quadrature node count must be non-negative");
  }

  // A product of four orbitals with indices < M is a polynomial of degree
  // at most 4(M-1) times exp(-2x^2), so exactness needs 2M-1 nodes; the
  // default of 2M+2 keeps comfortable headroom.
  const int min_nodes = (4 * (mode_count - 1)) / 2 + 1;
  int node_count = quadrature_nodes;
  if (node_count == 0) {
    node_count = 2 * mode_count + 2;
  } else if (node_count < min_nodes) {
    throw Error("quadrature_nodes = " + std::to_string(quadrature_nodes) +
                " is too small for exact quartic integrals with " +
                std::to_string(mode_count) + " modes (need at least " +
                std::to_string(min_nodes) + ")");
  }
  const QuadratureRule rule = build_quadrature(2.0, 2 * node_count - 2);

  InteractionTensor tensor;
  tensor.mode_count_ = mode_count;
  const std::size_t m = static_cast<std::size_t>(mode_count);
  tensor.values_.assign(m * m * m * m, 0.0);

  // Orbital values at the nodes; integration then reduces to a weighted sum
  // of quartic products.  Odd-index-sum elements vanish by parity and stay
  // at exactly zero.
  Eigen::MatrixXd phi(rule.size(), mode_count);
  for (int q = 0; q < rule.size(); ++q) {
    const double x = rule.nodes[q];
    // The rule's weight exp(-2x^2) is exactly the Gaussian carried by the
    // four orbitals, so the polynomial factor is phi / exp(-x^2/2) per
    // orbital; fold one quarter of the weight correction into each column.
    phi.row(q) = orbital_column(mode_count - 1, x).transpose() *
                 std::exp(0.5 * x * x);
  }

  for (int i = 0; i < mode_count; ++i) {
    for (int j = i; j < mode_count; ++j) {
      for (int k = j; k < mode_count; ++k) {
        for (int l = k; l < mode_count; ++l) {
          if ((i + j + k + l) % 2 != 0) continue;
          double sum = 0.0;
          for (int q = 0; q < rule.size(); ++q) {
            sum += rule.weights[q] * phi(q, i) * phi(q, j) * phi(q, k) * phi(q, l);
          }
          // Mirror to all index orderings; the integrand is symmetric.
          const int idx[4] = {i, j, k, l};
          int perm[4] = {0, 1, 2, 3};
          do {
            tensor.values_[tensor.flat_index(idx[perm[0]], idx[perm[1]], idx[perm[2]],
                                             idx[perm[3]])] = sum;
          } while (std::next_permutation(perm, perm + 4));
        }
      }
    }
  }
  return tensor;
}

}  // namespace bogolab
