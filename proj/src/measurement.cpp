#include "fockopt/measurement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

namespace fockopt {

namespace {

struct Split {
  Pattern pattern;
  FockBasisState rest;
};

std::vector<bool> measured_mask(const MeasurementSpec& spec, std::size_t mode_count) {
  std::vector<bool> mask(mode_count, false);
  for (auto m : spec.modes) mask[m] = true;
  return mask;
}

// Measured counts and residual label of one ket.
Split split_ket(const FockBasisState& ket, const MeasurementSpec& spec,
                const std::vector<bool>& mask) {
  Split out;
  out.pattern.reserve(spec.modes.size());
  for (auto m : spec.modes) out.pattern.push_back(ket[m]);
  std::vector<int> rest;
  rest.reserve(ket.mode_count() - spec.modes.size());
  for (std::size_t i = 0; i < ket.mode_count(); ++i) {
    if (!mask[i]) rest.push_back(ket[i]);
  }
  out.rest = FockBasisState(std::move(rest));
  return out;
}

// Unnormalized conditional states keyed by pattern; summation follows the
// state's ket order so every caller sees identical arithmetic.
std::map<Pattern, StateVector> project_all(const StateVector& s, const MeasurementSpec& spec,
                                           const Pattern* only) {
  validate(spec, s.mode_count());
  const auto mask = measured_mask(spec, s.mode_count());
  const std::size_t rest_modes = s.mode_count() - spec.modes.size();
  std::map<Pattern, StateVector> projected;
  for (const auto& [ket, amp] : s) {
    auto split = split_ket(ket, spec, mask);
    if (only != nullptr && split.pattern != *only) continue;
    auto it = projected.try_emplace(std::move(split.pattern), rest_modes).first;
    it->second.add(split.rest, amp);
  }
  return projected;
}

Outcome finish(StateVector conditional) {
  Outcome out;
  out.probability = norm_squared(conditional);
  conditional *= 1.0 / std::sqrt(out.probability);
  conditional.prune();
  out.residual = std::move(conditional);
  return out;
}

}  // namespace

double OutcomeDistribution::total_probability() const {
  double acc = 0.0;
  for (const auto& [pattern, outcome] : entries) acc += outcome.probability;
  return acc;
}

void validate(const MeasurementSpec& spec, std::size_t mode_count) {
  std::set<std::size_t> seen;
  for (auto m : spec.modes) {
    if (m >= mode_count) {
      throw StructuralError("measured mode " + std::to_string(m) + " out of range for a " +
                            std::to_string(mode_count) + "-mode state");
    }
    if (!seen.insert(m).second) {
      throw StructuralError("mode " + std::to_string(m) + " measured twice");
    }
  }
}

OutcomeDistribution outcome_distribution(const StateVector& s, const MeasurementSpec& spec) {
  OutcomeDistribution dist;
  for (auto& [pattern, conditional] : project_all(s, spec, nullptr)) {
    if (norm_squared(conditional) < kProbabilityFloor) continue;
    dist.entries.emplace(pattern, finish(std::move(conditional)));
  }
  return dist;
}

PostselectResult postselect(const StateVector& s, const MeasurementSpec& spec,
                            const Pattern& pattern) {
  if (pattern.size() != spec.modes.size()) {
    throw StructuralError("pattern has " + std::to_string(pattern.size()) + " entries for " +
                          std::to_string(spec.modes.size()) + " measured modes");
  }
  if (std::any_of(pattern.begin(), pattern.end(), [](int n) { return n < 0; })) {
    throw StructuralError("negative photon count in pattern " + format_pattern(pattern));
  }
  auto projected = project_all(s, spec, &pattern);
  auto it = projected.find(pattern);
  if (it == projected.end() || norm_squared(it->second) < kProbabilityFloor) return {};
  auto outcome = finish(std::move(it->second));
  return {outcome.probability, std::move(outcome.residual)};
}

std::map<Pattern, std::uint64_t> sample_outcomes(const StateVector& s,
                                                 const MeasurementSpec& spec,
                                                 std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw StructuralError("shots must be positive");
  const auto dist = outcome_distribution(s, spec);
  if (dist.entries.empty()) throw StructuralError("cannot sample from an empty state");

  std::vector<const Pattern*> patterns;
  std::vector<double> cdf;
  double running = 0.0;
  for (const auto& [pattern, outcome] : dist.entries) {
    running += outcome.probability;
    patterns.push_back(&pattern);
    cdf.push_back(running);
  }

  std::vector<std::uint64_t> counts(patterns.size(), 0);
  std::mt19937_64 rng(seed);
  constexpr double kScale = 0x1.0p-53;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = static_cast<double>(rng() >> 11) * kScale * running;
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++counts[std::min(idx, counts.size() - 1)];
  }

  std::map<Pattern, std::uint64_t> out;
  for (std::size_t i = 0; i < patterns.size(); ++i) out.emplace(*patterns[i], counts[i]);
  return out;
}

std::string format_pattern(const Pattern& pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(pattern[i]);
  }
  return out;
}

Pattern parse_pattern(const std::string& text) {
  Pattern out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    int value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc{} || value < 0) {
      throw StructuralError("malformed pattern '" + text + "': expected comma-separated counts");
    }
    out.push_back(value);
    if (next == end) break;
    if (*next != ',') {
      throw StructuralError("malformed pattern '" + text + "': expected ','");
    }
    p = next + 1;
  }
  return out;
}

}  // namespace fockopt
