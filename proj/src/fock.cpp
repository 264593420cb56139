#include "bogolab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bogolab {

OccupationVector::OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int n : counts_) {
    if (n < 0) {
      throw Error("occupation counts must be non-negative");
    }
  }
}

int OccupationVector::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::size_t OccupationHash::operator()(const OccupationVector& v) const noexcept {
  // FNV-1a over the counts; occupations are small non-negative ints.
  std::uint64_t h = 1469598103934665603ull;
  for (int n : v.counts_) {
    h ^= static_cast<std::uint64_t>(n);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t fock_dimension(int total_particles, int mode_count) {
  if (total_particles < 0 || mode_count < 1) {
    throw Error("fock_dimension requires N >= 0 and M >= 1");
  }
  // binomial(N + M - 1, M - 1), built incrementally with overflow checks.
  const std::uint64_t n = static_cast<std::uint64_t>(total_particles) +
                          static_cast<std::uint64_t>(mode_count) - 1;
  std::uint64_t k = static_cast<std::uint64_t>(mode_count) - 1;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (result > UINT64_MAX / factor) {
      throw CapacityError("Fock dimension overflows 64-bit arithmetic; reduce N or M");
    }
    result = result * factor / i;  // product of i consecutive ints is divisible by i!
  }
  return result;
}

std::optional<LadderTerm> apply_annihilate(int mode, const OccupationVector& s) {
  const int n = s[mode];
  if (n == 0) {
    return std::nullopt;
  }
  LadderTerm term;
  term.coefficient = std::sqrt(static_cast<double>(n));
  std::vector<int> counts = s.counts();
  counts[static_cast<std::size_t>(mode)] = n - 1;
  term.state = OccupationVector(std::move(counts));
  return term;
}

LadderTerm apply_create(int mode, const OccupationVector& s) {
  const int n = s[mode];
  LadderTerm term;
  term.coefficient = std::sqrt(static_cast<double>(n) + 1.0);
  std::vector<int> counts = s.counts();
  counts[static_cast<std::size_t>(mode)] = n + 1;
  term.state = OccupationVector(std::move(counts));
  return term;
}

std::optional<LadderTerm> apply_pair_string(int create_i, int create_j, int annihilate_k,
                                            int annihilate_l, const OccupationVector& s) {
  auto first = apply_annihilate(annihilate_l, s);
  if (!first) return std::nullopt;
  auto second = apply_annihilate(annihilate_k, first->state);
  if (!second) return std::nullopt;
  LadderTerm third = apply_create(create_j, second->state);
  LadderTerm fourth = apply_create(create_i, third.state);
  fourth.coefficient *= first->coefficient * second->coefficient * third.coefficient;
  return fourth;
}

FockBasis FockBasis::enumerate(int total_particles, int mode_count, std::uint64_t max_states) {
  const std::uint64_t dim = fock_dimension(total_particles, mode_count);
  if (dim > max_states) {
    throw CapacityError("Fock basis of dimension " + std::to_string(dim) +
                        " exceeds the configured limit of " + std::to_string(max_states) +
                        " states; reduce N or M");
  }

  FockBasis basis;
  basis.total_particles_ = total_particles;
  basis.mode_count_ = mode_count;
  basis.states_.reserve(static_cast<std::size_t>(dim));
  basis.index_.reserve(static_cast<std::size_t>(dim));

  // Walk the states in order: start from (N,0,...,0) and repeatedly move one
  // particle from the last movable mode one slot to the right, pulling back
  // everything to its right.
  std::vector<int> v(static_cast<std::size_t>(mode_count), 0);
  v[0] = total_particles;
  while (true) {
    basis.index_.emplace(OccupationVector(v), basis.states_.size());
    basis.states_.emplace_back(OccupationVector(v));

    int pivot = -1;
    for (int k = mode_count - 2; k >= 0; --k) {
      if (v[static_cast<std::size_t>(k)] > 0) {
        pivot = k;
        break;
      }
    }
    if (pivot < 0) break;  // all particles sit in the last mode

    int tail = 0;
    for (int k = pivot + 1; k < mode_count; ++k) {
      tail += v[static_cast<std::size_t>(k)];
      v[static_cast<std::size_t>(k)] = 0;
    }
    v[static_cast<std::size_t>(pivot)] -= 1;
    v[static_cast<std::size_t>(pivot) + 1] = tail + 1;
  }
  return basis;
}

std::optional<std::size_t> FockBasis::find(const OccupationVector& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index_of(const OccupationVector& state) const {
  auto found = find(state);
  if (!found) {
    throw Error("occupation vector is not a member of this Fock basis");
  }
  return *found;
}

}  // namespace bogolab
