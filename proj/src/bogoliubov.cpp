#include "bogolab/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace bogolab {

namespace {

// Gamma[i,l] = sum_jk I[i,j,k,l] c_j c_k; by the full index symmetry of the
// tensor this same matrix also gives the pair contraction over (k,l).
Eigen::MatrixXd pair_contraction(const InteractionTensor& tensor, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(c.size());
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int l = 0; l < m; ++l) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j) {
        if (c[j] == 0.0) continue;
        for (int k = 0; k < m; ++k) {
          acc += tensor(i, j, k, l) * c[j] * c[k];
        }
      }
      gamma(i, l) = acc;
    }
  }
  return gamma;
}

Eigen::VectorXd mode_energies(int m) {
  Eigen::VectorXd e(m);
  for (int n = 0; n < m; ++n) e[n] = mode_energy(n);
  return e;
}

// Matrix of x^2/2 in the trap eigenbasis (kinetic uses the same entries
// with negated off-diagonals).
Eigen::MatrixXd half_x_squared(int m, double off_sign) {
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
  for (int n = 0; n < m; ++n) {
    mat(n, n) = 0.25 * (2.0 * n + 1.0);
    if (n + 2 < m) {
      const double coupling = off_sign * 0.25 * std::sqrt((n + 1.0) * (n + 2.0));
      mat(n, n + 2) = coupling;
      mat(n + 2, n) = coupling;
    }
  }
  return mat;
}

void check_problem(const ModelParams& params, const InteractionTensor& tensor,
                   const Eigen::VectorXd& coeffs) {
  if (params.modes < 1) {
    throw Error("model requires at least one mode");
  }
  if (coeffs.size() != params.modes) {
    throw Error("coefficient vector does not match the mode count");
  }
  if (tensor.mode_count() < params.modes) {
    throw Error("interaction tensor covers fewer modes than the model");
  }
}

}  // namespace

double interaction_weight(InteractionWeight weight, int n_particles) {
  switch (weight) {
    case InteractionWeight::kParticleNumber:
      return static_cast<double>(n_particles);
    case InteractionWeight::kParticleNumberMinusOne:
      return static_cast<double>(n_particles) - 1.0;
  }
  throw Error("unknown interaction weight convention");
}

double gp_energy(const ModelParams& params, const InteractionTensor& tensor,
                 const Eigen::VectorXd& coeffs, InteractionWeight weight) {
  check_problem(params, tensor, coeffs);
  const double gk = params.coupling * interaction_weight(weight, params.n_particles);
  const Eigen::VectorXd energies = mode_energies(params.modes);
  const Eigen::MatrixXd gamma = pair_contraction(tensor, coeffs);
  return energies.dot(coeffs.cwiseProduct(coeffs)) +
         0.5 * gk * coeffs.dot(gamma * coeffs);
}

Eigen::VectorXd gp_gradient(const ModelParams& params, const InteractionTensor& tensor,
                            const Eigen::VectorXd& coeffs, InteractionWeight weight) {
  check_problem(params, tensor, coeffs);
  const double gk = params.coupling * interaction_weight(weight, params.n_particles);
  const Eigen::VectorXd energies = mode_energies(params.modes);
  const Eigen::MatrixXd gamma = pair_contraction(tensor, coeffs);
  return 2.0 * (energies.cwiseProduct(coeffs) + gk * (gamma * coeffs));
}

GpEnergyParts gp_energy_parts(const ModelParams& params, const InteractionTensor& tensor,
                              const Eigen::VectorXd& coeffs, InteractionWeight weight) {
  check_problem(params, tensor, coeffs);
  const double gk = params.coupling * interaction_weight(weight, params.n_particles);
  GpEnergyParts parts;
  parts.kinetic = coeffs.dot(half_x_squared(params.modes, -1.0) * coeffs);
  parts.trap = coeffs.dot(half_x_squared(params.modes, 1.0) * coeffs);
  parts.interaction = 0.5 * gk * coeffs.dot(pair_contraction(tensor, coeffs) * coeffs);
  return parts;
}

CondensateOrbital solve_condensate(const ModelParams& params, const InteractionTensor& tensor,
                                   const GpOptions& options) {
  if (options.tol <= 0.0) {
    throw Error("orbital solver tolerance must be positive");
  }
  if (options.max_iter < 1) {
    throw Error("orbital solver iteration budget must be positive");
  }
  const int m = params.modes;
  Eigen::VectorXd probe = Eigen::VectorXd::Unit(m, 0);
  check_problem(params, tensor, probe);

  const double gk = params.coupling * interaction_weight(options.weight, params.n_particles);
  const Eigen::VectorXd energies = mode_energies(m);

  auto apply_mean_field = [&](const Eigen::VectorXd& c) -> Eigen::VectorXd {
    return energies.cwiseProduct(c) + gk * (pair_contraction(tensor, c) * c);
  };
  auto energy_of = [&](const Eigen::VectorXd& c) -> double {
    return gp_energy(params, tensor, c, options.weight);
  };

  Eigen::VectorXd c = probe;
  double energy = energy_of(c);

  // Phase 1 descends with an energy-guarded step until the stationarity
  // residual reaches the scale where energy differences drown in rounding;
  // phase 2 then polishes with a fixed step guarded by the residual itself.
  const double phase2_entry = std::max(options.tol, 1e-6);
  double step = 0.1;
  bool polishing = false;
  double polish_step = 0.0;
  double previous_residual = std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_c = c;

  CondensateOrbital orbital;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    const Eigen::VectorXd hc = apply_mean_field(c);
    const double mu = c.dot(hc);
    const Eigen::VectorXd r = hc - mu * c;
    const double residual = r.norm();
    if (!std::isfinite(residual) || !std::isfinite(energy)) {
      throw ConvergenceError("mean-field iteration diverged; no stable orbital at coupling " +
                                 std::to_string(params.coupling),
                             best_residual);
    }
    if (residual < best_residual) {
      best_residual = residual;
      best_c = c;
    }
    if (residual <= options.tol) {
      orbital.coeffs = c;
      orbital.mu = mu;
      orbital.energy_per_particle = energy_of(c);
      orbital.residual = residual;
      orbital.iterations = iter;
      orbital.converged = true;
      return orbital;
    }

    if (!polishing && residual <= phase2_entry) {
      polishing = true;
      // Keep the polish step below the curvature scale of the highest mode.
      polish_step = std::min(step, 0.5 / energies[m - 1]);
      previous_residual = residual;
    }

    if (!polishing) {
      const Eigen::VectorXd trial = (c - step * r).normalized();
      const double trial_energy = energy_of(trial);
      if (trial_energy <= energy + 1e-14 * (1.0 + std::abs(energy))) {
        c = trial;
        energy = trial_energy;
        step = std::min(step * 1.1, 0.5);
      } else {
        step *= 0.5;
        if (step < 1e-14) {
          polishing = true;
          polish_step = 0.5 / energies[m - 1];
          previous_residual = residual;
        }
      }
    } else {
      if (residual > 1.2 * previous_residual) {
        polish_step *= 0.5;
        c = best_c;
        previous_residual = best_residual;
        if (polish_step < 1e-13) {
          throw ConvergenceError(
              "mean-field polish stalled at residual " + std::to_string(best_residual),
              best_residual);
        }
        continue;
      }
      previous_residual = residual;
      c = (c - polish_step * r).normalized();
    }
  }
  throw ConvergenceError("mean-field solver exhausted " + std::to_string(options.max_iter) +
                             " iterations at residual " + std::to_string(best_residual),
                         best_residual);
}

Eigen::MatrixXd fluctuation_basis(const Eigen::VectorXd& coeffs) {
  const int m = static_cast<int>(coeffs.size());
  if (m < 2) {
    throw Error("fluctuation basis requires at least two modes");
  }
  if (std::abs(coeffs.norm() - 1.0) > 1e-8) {
    throw Error("fluctuation basis requires a unit-norm orbital");
  }

  Eigen::MatrixXd basis(m, m - 1);
  int kept = 0;
  for (int n = 0; n < m && kept < m - 1; ++n) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(m, n);
    for (int pass = 0; pass < 2; ++pass) {
      v -= coeffs.dot(v) * coeffs;
      for (int k = 0; k < kept; ++k) {
        v -= basis.col(k).dot(v) * basis.col(k);
      }
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;  // this trap mode is absorbed by the orbital
    basis.col(kept++) = v / norm;
  }
  if (kept != m - 1) {
    throw Error("fluctuation basis is rank deficient");
  }
  return basis;
}

QuadraticForm build_quadratic(const ModelParams& params, const InteractionTensor& tensor,
                              const CondensateOrbital& orbital, const GpOptions& options) {
  if (!orbital.converged) {
    throw ConvergenceError("quadratic expansion requires a converged orbital",
                           orbital.residual);
  }
  if (params.modes < 2) {
    throw Error("quadratic expansion requires at least two modes");
  }
  const Eigen::VectorXd& c = orbital.coeffs;
  check_problem(params, tensor, c);

  const double gk = params.coupling * interaction_weight(options.weight, params.n_particles);
  const Eigen::VectorXd energies = mode_energies(params.modes);
  const Eigen::MatrixXd gamma = pair_contraction(tensor, c);

  const Eigen::VectorXd hc = energies.cwiseProduct(c) + gk * (gamma * c);
  const double mu = c.dot(hc);
  const Eigen::VectorXd residual_vec = hc - mu * c;

  Eigen::MatrixXd basis = fluctuation_basis(c);

  // The linear term sqrt(N) * <e_p| H_gp c> must vanish at a stationary
  // point; anything larger than the solver tolerance means the expansion
  // point is wrong.
  const double root_n = std::sqrt(static_cast<double>(params.n_particles));
  const Eigen::VectorXd linear = root_n * (basis.transpose() * residual_vec);
  const double linear_max = linear.size() > 0 ? linear.cwiseAbs().maxCoeff() : 0.0;
  if (linear_max > 10.0 * options.tol) {
    throw ConvergenceError("linear fluctuation term " + std::to_string(linear_max) +
                               " does not vanish; orbital is not stationary under this "
                               "interaction weight convention",
                           linear_max);
  }

  const Eigen::MatrixXd h_perp =
      basis.transpose() * energies.asDiagonal() * basis;
  const Eigen::MatrixXd pair = basis.transpose() * gamma * basis;

  QuadraticForm form;
  form.A = h_perp + 2.0 * gk * pair -
           mu * Eigen::MatrixXd::Identity(params.modes - 1, params.modes - 1);
  form.B = gk * pair;
  form.A = 0.5 * (form.A + form.A.transpose()).eval();
  form.B = 0.5 * (form.B + form.B.transpose()).eval();
  form.c0 = params.n_particles * orbital.energy_per_particle;
  form.fluct_basis = std::move(basis);
  return form;
}

namespace {

struct RawMode {
  double epsilon = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

BogoliubovSpectrum collect_modes(std::vector<RawMode> modes, int goldstone_count, double c0,
                                 double trace_a, Eigen::Index n) {
  std::sort(modes.begin(), modes.end(),
            [](const RawMode& a, const RawMode& b) { return a.epsilon < b.epsilon; });
  BogoliubovSpectrum spectrum;
  spectrum.goldstone_count = goldstone_count;
  spectrum.u.resize(n, static_cast<Eigen::Index>(modes.size()));
  spectrum.v.resize(n, static_cast<Eigen::Index>(modes.size()));
  double eps_sum = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j) {
    spectrum.epsilons.push_back(modes[j].epsilon);
    spectrum.u.col(static_cast<Eigen::Index>(j)) = modes[j].u;
    spectrum.v.col(static_cast<Eigen::Index>(j)) = modes[j].v;
    spectrum.depletion += modes[j].v.squaredNorm();
    eps_sum += modes[j].epsilon;
  }
  spectrum.ground_energy = c0 + 0.5 * (eps_sum - trace_a);
  return spectrum;
}

BogoliubovSpectrum diagonalize_direct(const QuadraticForm& form, double gtol) {
  // B = 0: the form is already particle-conserving, so plain symmetric
  // diagonalization of A gives the quasiparticle energies and v = 0.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form.A);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver failed on the fluctuation matrix");
  }
  const Eigen::Index n = form.A.rows();
  std::vector<RawMode> modes;
  int goldstone = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eps = solver.eigenvalues()[i];
    if (std::abs(eps) <= gtol) {
      ++goldstone;
      continue;
    }
    if (eps < 0.0) {
      throw InstabilityError("fluctuation mode with negative energy " + std::to_string(eps) +
                             "; no stable quasiparticle vacuum");
    }
    RawMode mode;
    mode.epsilon = eps;
    mode.u = solver.eigenvectors().col(i);
    mode.v = Eigen::VectorXd::Zero(n);
    modes.push_back(std::move(mode));
  }
  return collect_modes(std::move(modes), goldstone, form.c0, form.A.trace(), n);
}

BogoliubovSpectrum diagonalize_general(const QuadraticForm& form, double gtol) {
  const Eigen::Index n = form.A.rows();
  Eigen::MatrixXd big(2 * n, 2 * n);
  big.topLeftCorner(n, n) = form.A;
  big.topRightCorner(n, n) = form.B;
  big.bottomLeftCorner(n, n) = -form.B;
  big.bottomRightCorner(n, n) = -form.A;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(big);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("general eigensolver failed on the fluctuation problem");
  }

  double max_imag = 0.0;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    max_imag = std::max(max_imag, std::abs(solver.eigenvalues()[i].imag()));
  }
  if (max_imag > gtol) {
    throw InstabilityError(
        "complex quasiparticle energies (max imaginary part " + std::to_string(max_imag) +
        "); the fluctuation problem is dynamically unstable");
  }

  std::vector<RawMode> modes;
  int zero_count = 0;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const double eps = solver.eigenvalues()[i].real();
    if (std::abs(eps) <= gtol) {
      ++zero_count;
      continue;
    }
    if (eps < 0.0) continue;  // mirror partner of a positive-energy mode

    // Eigenvectors of a real matrix with a real eigenvalue are real up to a
    // global complex phase; rotate the largest component onto the real axis.
    Eigen::VectorXcd z = solver.eigenvectors().col(i);
    Eigen::Index imax = 0;
    z.cwiseAbs().maxCoeff(&imax);
    z *= std::abs(z[imax]) / z[imax];
    Eigen::VectorXd zr = z.real();

    RawMode mode;
    mode.epsilon = eps;
    mode.u = zr.head(n);
    mode.v = zr.tail(n);
    const double s = mode.u.squaredNorm() - mode.v.squaredNorm();
    const double scale = mode.u.squaredNorm() + mode.v.squaredNorm();
    if (s <= 1e-10 * scale) {
      throw InstabilityError(
          "quasiparticle mode with non-positive symplectic norm; the fluctuation "
          "problem is thermodynamically unstable");
    }
    mode.u /= std::sqrt(s);
    mode.v /= std::sqrt(s);
    modes.push_back(std::move(mode));
  }
  return collect_modes(std::move(modes), zero_count / 2, form.c0, form.A.trace(), n);
}

BogoliubovSpectrum diagonalize_cholesky(const QuadraticForm& form, double gtol) {
  const Eigen::Index n = form.A.rows();
  const Eigen::MatrixXd difference = form.A - form.B;
  const Eigen::MatrixXd sum = form.A + form.B;

  Eigen::LLT<Eigen::MatrixXd> llt(difference);
  if (llt.info() != Eigen::Success) {
    // A - B is not positive definite; fall back to the general solver,
    // which classifies the failure honestly.
    return diagonalize_general(form, gtol);
  }
  const Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd reduced = l.transpose() * sum * l;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver failed on the reduced fluctuation matrix");
  }

  std::vector<RawMode> modes;
  int goldstone = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = solver.eigenvalues()[i];  // equals eps^2
    const double eps_abs = std::sqrt(std::abs(lambda));
    if (eps_abs <= gtol) {
      ++goldstone;
      continue;
    }
    if (lambda < 0.0) {
      throw InstabilityError(
          "complex quasiparticle energies (max imaginary part " + std::to_string(eps_abs) +
          "); the fluctuation problem is dynamically unstable");
    }
    const double eps = std::sqrt(lambda);
    // Scaling the reduced eigenvector by 1/sqrt(eps) lands the mode on
    // u^T u - v^T v = 1.
    const Eigen::VectorXd w = solver.eigenvectors().col(i) / std::sqrt(eps);
    const Eigen::VectorXd x = l * w;
    const Eigen::VectorXd y = sum * x / eps;
    RawMode mode;
    mode.epsilon = eps;
    mode.u = 0.5 * (x + y);
    mode.v = 0.5 * (x - y);
    modes.push_back(std::move(mode));
  }
  return collect_modes(std::move(modes), goldstone, form.c0, form.A.trace(), n);
}

}  // namespace

BogoliubovSpectrum diagonalize_quadratic(const QuadraticForm& form,
                                         const DiagonalizeOptions& options) {
  if (form.A.rows() < 1 || form.A.rows() != form.A.cols() || form.B.rows() != form.A.rows() ||
      form.B.cols() != form.A.cols()) {
    throw Error("quadratic form matrices must be square and of equal size");
  }
  if (options.goldstone_tol <= 0.0) {
    throw Error("goldstone tolerance must be positive");
  }
  if (options.force_general) {
    return diagonalize_general(form, options.goldstone_tol);
  }
  if (form.B.cwiseAbs().maxCoeff() == 0.0) {
    return diagonalize_direct(form, options.goldstone_tol);
  }
  return diagonalize_cholesky(form, options.goldstone_tol);
}

BogoliubovReport bogoliubov_report(const ModelParams& params, const InteractionTensor& tensor,
                                   const GpOptions& gp_options,
                                   const DiagonalizeOptions& diag_options) {
  if (params.n_particles < 1) {
    throw Error("fluctuation analysis requires at least one particle");
  }
  const CondensateOrbital orbital = solve_condensate(params, tensor, gp_options);
  const QuadraticForm form = build_quadratic(params, tensor, orbital, gp_options);
  const BogoliubovSpectrum spectrum = diagonalize_quadratic(form, diag_options);

  BogoliubovReport report;
  report.mu = orbital.mu;
  report.energy_per_particle = orbital.energy_per_particle;
  report.e_gp = params.n_particles * orbital.energy_per_particle;
  report.e_bog = spectrum.ground_energy;
  report.depletion = spectrum.depletion;
  report.condensate_fraction = 1.0 - spectrum.depletion / params.n_particles;
  report.epsilons = spectrum.epsilons;
  report.goldstone_count = spectrum.goldstone_count;
  return report;
}

}  // namespace bogolab
