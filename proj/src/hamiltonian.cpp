#include "bogolab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bogolab {

SparseOperator::SparseOperator(std::size_t dimension, std::vector<std::size_t> rows,
                               std::vector<std::size_t> cols, std::vector<double> values)
    : dimension_(dimension) {
  if (rows.size() != cols.size() || rows.size() != values.size()) {
    throw Error("sparse triplet arrays must have equal lengths");
  }
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t] >= dimension_ || cols[t] >= dimension_) {
      throw Error("sparse triplet index out of range");
    }
  }

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows[a] != rows[b]) return rows[a] < rows[b];
    return cols[a] < cols[b];
  });

  row_offsets_.assign(dimension_ + 1, 0);
  col_indices_.reserve(rows.size());
  values_.reserve(rows.size());
  std::size_t pos = 0;
  while (pos < order.size()) {
    const std::size_t r = rows[order[pos]];
    const std::size_t c = cols[order[pos]];
    double sum = 0.0;
    while (pos < order.size() && rows[order[pos]] == r && cols[order[pos]] == c) {
      sum += values[order[pos]];
      ++pos;
    }
    if (sum != 0.0) {
      col_indices_.push_back(c);
      values_.push_back(sum);
      row_offsets_[r + 1] += 1;
    }
  }
  for (std::size_t r = 0; r < dimension_; ++r) {
    row_offsets_[r + 1] += row_offsets_[r];
  }
}

void SparseOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(x.size()) != dimension_) {
    throw Error("operator/vector dimension mismatch");
  }
  y.resize(static_cast<Eigen::Index>(dimension_));
  for (std::size_t r = 0; r < dimension_; ++r) {
    double acc = 0.0;
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      acc += values_[p] * x[static_cast<Eigen::Index>(col_indices_[p])];
    }
    y[static_cast<Eigen::Index>(r)] = acc;
  }
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  apply(x, y);
  return y;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dimension_),
                                                static_cast<Eigen::Index>(dimension_));
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col_indices_[p])) =
          values_[p];
    }
  }
  return dense;
}

double SparseOperator::symmetry_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      const std::size_t c = col_indices_[p];
      // Binary search for (c, r) in row c.
      const auto begin = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[c]);
      const auto end = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[c + 1]);
      const auto it = std::lower_bound(begin, end, r);
      double mirror = 0.0;
      if (it != end && *it == r) {
        mirror = values_[static_cast<std::size_t>(it - col_indices_.begin())];
      }
      worst = std::max(worst, std::abs(values_[p] - mirror));
    }
  }
  return worst;
}

SparseOperator SparseOperator::add_scaled(const SparseOperator& other, double scale) const {
  if (other.dimension_ != dimension_) {
    throw Error("cannot combine operators of different dimensions");
  }
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  rows.reserve(values_.size() + other.values_.size());
  cols.reserve(values_.size() + other.values_.size());
  vals.reserve(values_.size() + other.values_.size());
  for (std::size_t r = 0; r < dimension_; ++r) {
    for (std::size_t p = row_offsets_[r]; p < row_offsets_[r + 1]; ++p) {
      rows.push_back(r);
      cols.push_back(col_indices_[p]);
      vals.push_back(values_[p]);
    }
    for (std::size_t p = other.row_offsets_[r]; p < other.row_offsets_[r + 1]; ++p) {
      rows.push_back(r);
      cols.push_back(other.col_indices_[p]);
      vals.push_back(scale * other.values_[p]);
    }
  }
  return SparseOperator(dimension_, std::move(rows), std::move(cols), std::move(vals));
}

SparseOperator assemble_trap(const FockBasis& basis) {
  const std::size_t dim = basis.size();
  std::vector<std::size_t> rows(dim);
  std::vector<std::size_t> cols(dim);
  std::vector<double> vals(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    const OccupationVector& occ = basis.state(s);
    double e = 0.0;
    for (int n = 0; n < basis.mode_count(); ++n) {
      e += mode_energy(n) * occ[n];
    }
    rows[s] = s;
    cols[s] = s;
    vals[s] = e;
  }
  return SparseOperator(dim, std::move(rows), std::move(cols), std::move(vals));
}

SparseOperator assemble_interaction(const FockBasis& basis, const InteractionTensor& tensor) {
  const int modes = basis.mode_count();
  if (tensor.mode_count() < modes) {
    throw Error("interaction tensor covers fewer modes than the basis");
  }

  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<double> vals;

  // Column s of (1/2) sum I[i,j,k,l] b_i^dag b_j^dag b_l b_k: act with the
  // two annihilators, then the two creators, tracking the ladder factors
  // incrementally on a scratch copy of the occupation counts.
  std::vector<int> work;
  std::vector<double> column(basis.size());
  std::vector<std::size_t> touched;
  for (std::size_t s = 0; s < basis.size(); ++s) {
    std::fill(column.begin(), column.end(), 0.0);
    touched.clear();
    work = basis.state(s).counts();

    for (int k = 0; k < modes; ++k) {
      if (work[static_cast<std::size_t>(k)] == 0) continue;
      const double fk = std::sqrt(static_cast<double>(work[static_cast<std::size_t>(k)]));
      work[static_cast<std::size_t>(k)] -= 1;

      for (int l = 0; l < modes; ++l) {
        if (work[static_cast<std::size_t>(l)] == 0) continue;
        const double fl = fk * std::sqrt(static_cast<double>(work[static_cast<std::size_t>(l)]));
        work[static_cast<std::size_t>(l)] -= 1;

        for (int j = 0; j < modes; ++j) {
          const double fj = fl * std::sqrt(work[static_cast<std::size_t>(j)] + 1.0);
          work[static_cast<std::size_t>(j)] += 1;

          for (int i = 0; i < modes; ++i) {
            if ((i + j + k + l) % 2 != 0) continue;  // odd elements vanish
            const double element = tensor(i, j, k, l);
            if (element == 0.0) continue;
            const double fi = fj * std::sqrt(work[static_cast<std::size_t>(i)] + 1.0);
            work[static_cast<std::size_t>(i)] += 1;
            const std::size_t r = basis.index_of(OccupationVector(work));
            work[static_cast<std::size_t>(i)] -= 1;
            if (column[r] == 0.0) touched.push_back(r);
            column[r] += 0.5 * element * fi;
          }

          work[static_cast<std::size_t>(j)] -= 1;
        }

        work[static_cast<std::size_t>(l)] += 1;
      }

      work[static_cast<std::size_t>(k)] += 1;
    }

    for (std::size_t r : touched) {
      if (column[r] == 0.0) continue;
      rows.push_back(r);
      cols.push_back(s);
      vals.push_back(column[r]);
    }
  }
  return SparseOperator(basis.size(), std::move(rows), std::move(cols), std::move(vals));
}

SparseOperator assemble_hamiltonian(const ModelParams& params, const FockBasis& basis,
                                    const InteractionTensor& tensor) {
  if (params.n_particles != basis.total_particles() || params.modes != basis.mode_count()) {
    throw Error("model parameters do not match the supplied basis");
  }
  const SparseOperator trap = assemble_trap(basis);
  if (params.coupling == 0.0) {
    return trap;
  }
  return trap.add_scaled(assemble_interaction(basis, tensor), params.coupling);
}

}  // namespace bogolab
