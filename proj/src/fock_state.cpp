#include "fockopt/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fockopt {

FockBasisState::FockBasisState(std::vector<int> occupations)
    : occupations_(std::move(occupations)) {
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    if (occupations_[i] < 0) {
      throw StructuralError("negative occupation " + std::to_string(occupations_[i]) +
                            " in mode " + std::to_string(i));
    }
  }
}

int FockBasisState::total_photons() const noexcept {
  return std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

FockBasisState FockBasisState::with(std::size_t mode, int occupation) const {
  auto occ = occupations_;
  occ.at(mode) = occupation;
  return FockBasisState(std::move(occ));
}

FockBasisState concat(const FockBasisState& a, const FockBasisState& b) {
  std::vector<int> occ;
  occ.reserve(a.mode_count() + b.mode_count());
  occ.insert(occ.end(), a.occupations().begin(), a.occupations().end());
  occ.insert(occ.end(), b.occupations().begin(), b.occupations().end());
  return FockBasisState(std::move(occ));
}

StateVector StateVector::vacuum(std::size_t mode_count) {
  StateVector s(mode_count);
  s.add(FockBasisState::vacuum(mode_count), 1.0);
  return s;
}

Complex StateVector::amplitude(const FockBasisState& ket) const {
  auto it = terms_.find(ket);
  return it == terms_.end() ? Complex{} : it->second;
}

void StateVector::add(const FockBasisState& ket, Complex value) {
  if (ket.mode_count() != mode_count_) {
    throw StructuralError("ket has " + std::to_string(ket.mode_count()) +
                          " modes, state has " + std::to_string(mode_count_));
  }
  terms_[ket] += value;
}

void StateVector::prune(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) <= threshold; });
}

StateVector& StateVector::operator*=(Complex factor) {
  for (auto& [ket, c] : terms_) c *= factor;
  return *this;
}

StateVector make_state(std::size_t mode_count,
                       std::span<const std::pair<std::vector<int>, Complex>> terms) {
  StateVector s(mode_count);
  for (const auto& [occ, amp] : terms) {
    if (occ.size() != mode_count) {
      throw StructuralError("occupation list of length " + std::to_string(occ.size()) +
                            " for a " + std::to_string(mode_count) + "-mode state");
    }
    s.add(FockBasisState(occ), amp);
  }
  s.prune();
  return s;
}

StateVector make_state(std::size_t mode_count,
                       std::initializer_list<std::pair<std::vector<int>, Complex>> terms) {
  return make_state(mode_count, std::span(terms.begin(), terms.size()));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.mode_count() + b.mode_count());
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) out.add(concat(ka, kb), ca * cb);
  }
  out.prune();
  return out;
}

double norm_squared(const StateVector& s) {
  double acc = 0.0;
  for (const auto& [ket, c] : s) acc += std::norm(c);
  return acc;
}

StateVector normalized(const StateVector& s) {
  const double n2 = norm_squared(s);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw ValidationError("cannot normalize a state with norm^2 = " + std::to_string(n2));
  }
  StateVector out = s;
  out *= 1.0 / std::sqrt(n2);
  return out;
}

double max_abs_difference(const StateVector& a, const StateVector& b) {
  if (a.mode_count() != b.mode_count()) {
    throw StructuralError("mode count mismatch: " + std::to_string(a.mode_count()) + " vs " +
                          std::to_string(b.mode_count()));
  }
  double worst = 0.0;
  for (const auto& [k, c] : a) worst = std::max(worst, std::abs(c - b.amplitude(k)));
  for (const auto& [k, c] : b) worst = std::max(worst, std::abs(a.amplitude(k) - c));
  return worst;
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.mode_count() != b.mode_count()) {
    throw StructuralError("mode count mismatch: " + std::to_string(a.mode_count()) + " vs " +
                          std::to_string(b.mode_count()));
  }
  // Strict > keeps the lexicographically smallest ket among ties.
  const FockBasisState* pivot = nullptr;
  double largest = -1.0;
  for (const auto& [k, c] : b) {
    if (std::abs(c) > largest) {
      largest = std::abs(c);
      pivot = &k;
    }
  }

  Complex phase = 1.0;
  if (pivot != nullptr) {
    const Complex ratio = a.amplitude(*pivot) * std::conj(b.amplitude(*pivot));
    if (std::abs(ratio) > 0.0) phase = ratio / std::abs(ratio);
  }

  StateVector rotated = b;
  rotated *= phase;
  return max_abs_difference(a, rotated) <= tol;
}

}  // namespace fockopt
