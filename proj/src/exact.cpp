#include "bogolab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bogolab/orbitals.hpp"

namespace bogolab {

namespace {

constexpr double kDenseDefaultTol = 1e-10;
constexpr double kIterativeDefaultTol = 1e-8;

SpectrumResult solve_dense(const SparseOperator& op, int k, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.to_dense());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed to converge");
  }

  SpectrumResult result;
  result.eigenvalues.resize(static_cast<std::size_t>(k));
  result.eigenvectors.resize(static_cast<Eigen::Index>(op.dimension()), k);
  result.residual_norms.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double lambda = solver.eigenvalues()[j];
    const Eigen::VectorXd v = solver.eigenvectors().col(j);
    const double residual = (op.apply(v) - lambda * v).norm();
    if (residual > tol) {
      throw ConvergenceError(
          "dense eigenpair residual " + std::to_string(residual) + " exceeds tolerance",
          residual);
    }
    result.eigenvalues[static_cast<std::size_t>(j)] = lambda;
    result.eigenvectors.col(j) = v;
    result.residual_norms[static_cast<std::size_t>(j)] = residual;
  }
  return result;
}

// Lanczos with full reorthogonalization, one eigenpair at a time, deflating
// against the pairs already converged.
SpectrumResult solve_iterative(const SparseOperator& op, int k, double tol,
                               std::uint64_t seed, int max_subspace) {
  const Eigen::Index dim = static_cast<Eigen::Index>(op.dimension());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpectrumResult result;
  result.eigenvectors.resize(dim, k);

  Eigen::MatrixXd converged(dim, k);
  int n_converged = 0;

  auto project_out_converged = [&](Eigen::VectorXd& v) {
    for (int c = 0; c < n_converged; ++c) {
      v -= converged.col(c).dot(v) * converged.col(c);
    }
  };

  for (int target = 0; target < k; ++target) {
    const int m_max = std::min<Eigen::Index>(max_subspace, dim - target);
    if (m_max < 1) {
      throw Error("requested more eigenpairs than the operator dimension");
    }

    Eigen::MatrixXd q(dim, m_max);
    Eigen::VectorXd alpha(m_max);
    Eigen::VectorXd beta(m_max);

    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
    project_out_converged(v);
    project_out_converged(v);
    const double v0_norm = v.norm();
    if (v0_norm < 1e-12) {
      throw ConvergenceError("iterative eigensolver start vector collapsed after deflation");
    }
    q.col(0) = v / v0_norm;

    double best_residual = std::numeric_limits<double>::infinity();
    bool found = false;
    int m = 0;
    while (m < m_max && !found) {
      Eigen::VectorXd w = op.apply(q.col(m));
      if (m > 0) w -= beta[m - 1] * q.col(m - 1);
      alpha[m] = q.col(m).dot(w);
      w -= alpha[m] * q.col(m);
      // Two full reorthogonalization passes keep the basis orthogonal to
      // machine precision and enforce the deflation.
      for (int pass = 0; pass < 2; ++pass) {
        project_out_converged(w);
        for (int i = 0; i <= m; ++i) {
          w -= q.col(i).dot(w) * q.col(i);
        }
      }
      beta[m] = w.norm();
      ++m;

      const bool breakdown = beta[m - 1] < 1e-13;
      const bool last = (m == m_max) || breakdown;

      // Check the lowest Ritz pair of the current tridiagonal section.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(m), beta.head(m - 1));
      if (tri.info() != Eigen::Success) {
        throw ConvergenceError("tridiagonal eigensolver failed inside Lanczos");
      }
      const double theta = tri.eigenvalues()[0];
      const Eigen::VectorXd s = tri.eigenvectors().col(0);
      const double estimate = breakdown ? 0.0 : std::abs(beta[m - 1] * s[m - 1]);
      if (estimate <= tol || last) {
        Eigen::VectorXd x = q.leftCols(m) * s;
        project_out_converged(x);
        x.normalize();
        const double residual = (op.apply(x) - theta * x).norm();
        best_residual = std::min(best_residual, residual);
        if (residual <= tol) {
          converged.col(n_converged) = x;
          result.eigenvalues.push_back(theta);
          result.residual_norms.push_back(residual);
          ++n_converged;
          found = true;
          break;
        }
        if (last) {
          throw ConvergenceError("iterative eigensolver stalled at residual " +
                                     std::to_string(best_residual) + " for eigenpair " +
                                     std::to_string(target),
                                 best_residual);
        }
      }
      if (!found && m < m_max) {
        q.col(m) = w / beta[m - 1];
      }
    }
  }

  // Deflated sweeps can deliver near-degenerate pairs out of order.
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return result.eigenvalues[static_cast<std::size_t>(a)] <
                                       result.eigenvalues[static_cast<std::size_t>(b)]; });
  SpectrumResult sorted;
  sorted.eigenvectors.resize(dim, k);
  for (int j = 0; j < k; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    sorted.eigenvalues.push_back(result.eigenvalues[static_cast<std::size_t>(src)]);
    sorted.residual_norms.push_back(result.residual_norms[static_cast<std::size_t>(src)]);
    sorted.eigenvectors.col(j) = converged.col(src);
  }
  return sorted;
}

}  // namespace

SpectrumResult solve_lowest_k(const SparseOperator& op, int k, const SolverOptions& options) {
  if (k < 1) {
    throw Error("at least one eigenpair must be requested");
  }
  if (static_cast<std::size_t>(k) > op.dimension()) {
    throw Error("requested more eigenpairs than the operator dimension");
  }
  const bool dense = !options.force_iterative && op.dimension() <= options.dense_threshold;
  if (dense) {
    const double tol = options.tol > 0.0 ? options.tol : kDenseDefaultTol;
    return solve_dense(op, k, tol);
  }
  const double tol = options.tol > 0.0 ? options.tol : kIterativeDefaultTol;
  return solve_iterative(op, k, tol, options.seed, options.max_subspace);
}

SpectrumResult solve_ground(const SparseOperator& op, const SolverOptions& options) {
  return solve_lowest_k(op, 1, options);
}

Eigen::MatrixXd one_body_density_matrix(const FockBasis& basis,
                                        const Eigen::VectorXd& amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size()) {
    throw Error("amplitude vector does not match the basis dimension");
  }
  const int modes = basis.mode_count();
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(modes, modes);

  // <b_i^dag b_j>: diagonal from occupations, off-diagonal by moving one
  // particle j -> i and pairing amplitudes.
  std::vector<int> work;
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const double a = amplitudes[static_cast<Eigen::Index>(s)];
    if (a == 0.0) continue;
    const OccupationVector& occ = basis.state(s);
    for (int j = 0; j < modes; ++j) {
      const int nj = occ[j];
      if (nj == 0) continue;
      rho(j, j) += a * a * nj;
      for (int i = 0; i < modes; ++i) {
        if (i == j) continue;
        work = occ.counts();
        work[static_cast<std::size_t>(j)] -= 1;
        work[static_cast<std::size_t>(i)] += 1;
        const auto r = basis.find(OccupationVector(work));
        if (!r) continue;
        const double factor =
            std::sqrt(static_cast<double>(nj)) * std::sqrt(static_cast<double>(occ[i]) + 1.0);
        rho(i, j) += amplitudes[static_cast<Eigen::Index>(*r)] * a * factor;
      }
    }
  }
  // Clean up rounding asymmetry; the exact matrix is symmetric.
  rho = 0.5 * (rho + rho.transpose()).eval();
  return rho;
}

double condensate_fraction(const Eigen::MatrixXd& rho, int n_particles) {
  if (n_particles < 1) {
    throw Error("condensate fraction requires at least one particle");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("density-matrix eigensolver failed to converge");
  }
  return solver.eigenvalues().maxCoeff() / static_cast<double>(n_particles);
}

Eigen::VectorXd density_profile(const Eigen::MatrixXd& rho, const Eigen::VectorXd& points) {
  if (rho.rows() != rho.cols()) {
    throw Error("density matrix must be square");
  }
  const int modes = static_cast<int>(rho.rows());
  Eigen::VectorXd density(points.size());
  for (Eigen::Index p = 0; p < points.size(); ++p) {
    const Eigen::VectorXd phi = orbital_column(modes - 1, points[p]);
    density[p] = phi.dot(rho * phi);
  }
  return density;
}

}  // namespace bogolab
