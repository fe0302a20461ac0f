#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockopt/fock_state.hpp"

namespace fockopt {

/// Photon counts on the measured modes, in MeasurementSpec order.
using Pattern = std::vector<int>;

/// Patterns below this probability are not reported.
inline constexpr double kProbabilityFloor = 1e-14;

/// Ideal photon-number-resolving detectors on an ordered list of distinct modes.
struct MeasurementSpec {
  std::vector<std::size_t> modes;
};

struct Outcome {
  double probability = 0.0;
  /// Conditional state of the unmeasured modes (original order), normalized.
  StateVector residual{0};
};

/// Entries are ordered lexicographically by pattern.
struct OutcomeDistribution {
  std::map<Pattern, Outcome> entries;

  double total_probability() const;
};

struct PostselectResult {
  double probability = 0.0;
  /// Empty when the pattern has no support.
  std::optional<StateVector> residual;
};

/// Throws StructuralError for duplicate or out-of-range modes.
void validate(const MeasurementSpec& spec, std::size_t mode_count);

OutcomeDistribution outcome_distribution(const StateVector& s, const MeasurementSpec& spec);

/// Same arithmetic as the matching outcome_distribution entry. Unsupported
/// patterns give probability 0 and no residual. Throws StructuralError on a
/// pattern length mismatch or a negative count.
PostselectResult postselect(const StateVector& s, const MeasurementSpec& spec,
                            const Pattern& pattern);

/// Draws `shots` patterns by inverse CDF over the lexicographically ordered
/// distribution. Uniform variates are the top 53 bits of std::mt19937_64
/// seeded with `seed`, scaled by 2^-53. Every pattern of the distribution
/// appears in the result, with count zero if never drawn.
std::map<Pattern, std::uint64_t> sample_outcomes(const StateVector& s,
                                                 const MeasurementSpec& spec,
                                                 std::uint64_t shots, std::uint64_t seed);

/// "2,0" style rendering.
std::string format_pattern(const Pattern& pattern);

/// Inverse of format_pattern. Throws StructuralError on malformed text.
Pattern parse_pattern(const std::string& text);

}  // namespace fockopt
