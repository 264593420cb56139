#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "bogolab/errors.hpp"

namespace bogolab {

/// Occupation counts per single-particle mode, e.g. {2,0,1} = two particles
/// in mode 0 and one in mode 2.
class OccupationVector {
 public:
  OccupationVector() = default;

  /// Throws Error if any count is negative.
  explicit OccupationVector(std::vector<int> counts);

  int mode_count() const { return static_cast<int>(counts_.size()); }
  int total() const;
  int operator[](int mode) const { return counts_[static_cast<std::size_t>(mode)]; }
  const std::vector<int>& counts() const { return counts_; }

  bool operator==(const OccupationVector& other) const { return counts_ == other.counts_; }

 private:
  friend class FockBasis;
  friend struct OccupationHash;
  std::vector<int> counts_;
};

struct OccupationHash {
  std::size_t operator()(const OccupationVector& v) const noexcept;
};

/// Result of applying a ladder-operator string to a basis state: a single
/// scaled basis state `coefficient * |state>`.
struct LadderTerm {
  double coefficient = 0.0;
  OccupationVector state;
};

/// Number of ways to place `total_particles` bosons in `mode_count` modes,
/// i.e. binomial(N + M - 1, M - 1).  Throws CapacityError if the counting
/// arithmetic would overflow 64 bits.
std::uint64_t fock_dimension(int total_particles, int mode_count);

/// b_mode |s> = sqrt(n_mode) |s - e_mode>; empty result when n_mode == 0.
std::optional<LadderTerm> apply_annihilate(int mode, const OccupationVector& s);

/// b_mode^dag |s> = sqrt(n_mode + 1) |s + e_mode>.
LadderTerm apply_create(int mode, const OccupationVector& s);

/// b_i^dag b_j^dag b_k b_l |s>, applied right to left (b_l first).
/// Empty result when an annihilation hits an unoccupied mode.
std::optional<LadderTerm> apply_pair_string(int create_i, int create_j, int annihilate_k,
                                            int annihilate_l, const OccupationVector& s);

/// All occupation vectors with fixed particle number N over M modes, ordered
/// so that states with more particles in lower modes come first:
/// (N,0,...,0) is index 0 and (0,...,0,N) is the last index.
class FockBasis {
 public:
  static constexpr std::uint64_t kDefaultCapacity = 2'000'000;

  /// Enumerates the full basis.  Throws CapacityError if the dimension
  /// exceeds `max_states` (or overflows).
  static FockBasis enumerate(int total_particles, int mode_count,
                             std::uint64_t max_states = kDefaultCapacity);

  int total_particles() const { return total_particles_; }
  int mode_count() const { return mode_count_; }
  std::size_t size() const { return states_.size(); }

  const OccupationVector& state(std::size_t index) const { return states_[index]; }
  const std::vector<OccupationVector>& states() const { return states_; }

  /// Index of `state` in this basis; empty if it is not a member (wrong
  /// particle count or mode count).
  std::optional<std::size_t> find(const OccupationVector& state) const;

  /// Like find(), but throws Error when the state is absent.
  std::size_t index_of(const OccupationVector& state) const;

 private:
  FockBasis() = default;

  int total_particles_ = 0;
  int mode_count_ = 0;
  std::vector<OccupationVector> states_;
  std::unordered_map<OccupationVector, std::size_t, OccupationHash> index_;
};

/// Amplitudes over a FockBasis.  The basis object must outlive the vector.
struct StateVector {
  const FockBasis* basis = nullptr;
  Eigen::VectorXd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

}  // namespace bogolab
