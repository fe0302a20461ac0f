#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fockopt/errors.hpp"

namespace fockopt {

using Complex = std::complex<double>;

/// Amplitudes with magnitude at or below this are dropped from a StateVector.
inline constexpr double kPruneThreshold = 1e-15;

/// Occupation-number label |n_0, n_1, ..., n_{m-1}> of an m-mode Fock ket.
/// Ordering is lexicographic on the occupation tuple.
class FockBasisState {
 public:
  FockBasisState() = default;
  /// Throws StructuralError on a negative occupation.
  explicit FockBasisState(std::vector<int> occupations);
  FockBasisState(std::initializer_list<int> occupations)
      : FockBasisState(std::vector<int>(occupations)) {}

  static FockBasisState vacuum(std::size_t mode_count) {
    return FockBasisState(std::vector<int>(mode_count, 0));
  }

  std::size_t mode_count() const noexcept { return occupations_.size(); }
  int operator[](std::size_t mode) const { return occupations_[mode]; }
  const std::vector<int>& occupations() const noexcept { return occupations_; }
  int total_photons() const noexcept;

  /// Copy with the occupation of `mode` replaced.
  FockBasisState with(std::size_t mode, int occupation) const;

  friend auto operator<=>(const FockBasisState&, const FockBasisState&) = default;
  friend bool operator==(const FockBasisState&, const FockBasisState&) = default;

 private:
  std::vector<int> occupations_;
};

/// Concatenation of two labels (modes of `a` first).
FockBasisState concat(const FockBasisState& a, const FockBasisState& b);

/// Sparse superposition of Fock kets over a fixed number of modes.
///
/// Kets are kept in lexicographic order, so iteration is deterministic.
/// A zero-mode state is a scalar; its only ket is the empty label.
class StateVector {
 public:
  using Terms = std::map<FockBasisState, Complex>;
  using const_iterator = Terms::const_iterator;

  explicit StateVector(std::size_t mode_count) : mode_count_(mode_count) {}

  /// |0,...,0> with unit amplitude.
  static StateVector vacuum(std::size_t mode_count);

  std::size_t mode_count() const noexcept { return mode_count_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const_iterator begin() const noexcept { return terms_.begin(); }
  const_iterator end() const noexcept { return terms_.end(); }
  const Terms& terms() const noexcept { return terms_; }

  /// Zero for kets that are not stored.
  Complex amplitude(const FockBasisState& ket) const;

  /// Adds `value` to the amplitude of `ket`. Does not prune.
  void add(const FockBasisState& ket, Complex value);

  /// Removes every amplitude with |c| <= threshold.
  void prune(double threshold = kPruneThreshold);

  StateVector& operator*=(Complex factor);

 private:
  std::size_t mode_count_;
  Terms terms_;
};

/// Builds a state from (occupations, amplitude) pairs. Duplicate labels are
/// summed; the result is pruned. Throws StructuralError on a length mismatch
/// or a negative occupation.
StateVector make_state(std::size_t mode_count,
                       std::span<const std::pair<std::vector<int>, Complex>> terms);
StateVector make_state(std::size_t mode_count,
                       std::initializer_list<std::pair<std::vector<int>, Complex>> terms);

/// a ⊗ b: modes of `a` come first.
StateVector tensor(const StateVector& a, const StateVector& b);

double norm_squared(const StateVector& s);

/// Copy scaled to unit norm. Throws ValidationError for the zero state.
StateVector normalized(const StateVector& s);

/// True iff max_k |a(k) - λ b(k)| <= tol for the unit phase λ that aligns
/// the largest-|b| ket (ties: lexicographically smallest) with `a`.
/// Throws StructuralError on a mode count mismatch.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

/// max_k |a(k) - b(k)| over the union of supports.
double max_abs_difference(const StateVector& a, const StateVector& b);

}  // namespace fockopt
