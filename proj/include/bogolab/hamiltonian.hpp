#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bogolab/errors.hpp"
#include "bogolab/fock.hpp"
#include "bogolab/orbitals.hpp"

namespace bogolab {

/// Physical inputs of a single computation, in trap units.
struct ModelParams {
  int n_particles = 0;
  int modes = 1;
  double coupling = 0.0;  // contact interaction strength g
};

/// Sparse symmetric operator on a Fock basis, stored as sorted CSR.
class SparseOperator {
 public:
  SparseOperator() = default;

  /// Builds from triplets; duplicate (row, col) entries are summed and
  /// entries that cancel to zero are dropped.
  SparseOperator(std::size_t dimension, std::vector<std::size_t> rows,
                 std::vector<std::size_t> cols, std::vector<double> values);

  std::size_t dimension() const { return dimension_; }
  std::size_t nonzero_count() const { return values_.size(); }

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd to_dense() const;

  /// Largest |A_ij - A_ji| over all entries.
  double symmetry_defect() const;

  /// this + scale * other (matching dimensions required).
  SparseOperator add_scaled(const SparseOperator& other, double scale) const;

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<std::size_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& entries() const { return values_; }

 private:
  std::size_t dimension_ = 0;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// Non-interacting part: sum_n E_n b_n^dag b_n (diagonal in the basis).
SparseOperator assemble_trap(const FockBasis& basis);

/// Contact interaction at unit coupling:
///   (1/2) sum_{ijkl} I[i,j,k,l] b_i^dag b_j^dag b_l b_k.
/// The tensor must cover at least basis.mode_count() modes.
SparseOperator assemble_interaction(const FockBasis& basis, const InteractionTensor& tensor);

/// Full Hamiltonian: trap + coupling * interaction.
SparseOperator assemble_hamiltonian(const ModelParams& params, const FockBasis& basis,
                                    const InteractionTensor& tensor);

}  // namespace bogolab
