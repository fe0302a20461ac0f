#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockopt/linear_optics.hpp"
#include "fockopt/measurement.hpp"

namespace fockopt {

struct InputTerm {
  std::vector<int> occupations;
  double re = 0.0;
  double im = 0.0;

  friend bool operator==(const InputTerm&, const InputTerm&) = default;
};

struct MeasureDirective {
  std::vector<std::size_t> modes;
  std::optional<Pattern> postselect;

  friend bool operator==(const MeasureDirective&, const MeasureDirective&) = default;
};

/// A circuit file: an input state, elements in application order, and an
/// optional terminal measurement. See docs/circuit-format.md.
struct CircuitDescription {
  std::size_t mode_count = 0;
  bool normalize = false;
  std::vector<InputTerm> input_terms;
  std::vector<OpticalElement> elements;
  std::optional<MeasureDirective> measure;

  friend bool operator==(const CircuitDescription&, const CircuitDescription&) = default;
};

/// Throws ParseError (line/column) for syntax and directive-order problems
/// and SemanticError (field path) for out-of-range or inconsistent content.
CircuitDescription parse_circuit(std::string_view text);
CircuitDescription parse_circuit(std::istream& in);
CircuitDescription parse_circuit_file(const std::string& path);

/// Canonical text: fixed key order, 17 significant digits, one directive
/// per line.
std::string serialize_circuit(const CircuitDescription& circuit);

/// Shortest-round-trip-safe decimal text (17 significant digits).
std::string format_double(double value, int significant = 17);

/// Input state of the description; normalized when `normalize` is set.
/// Throws ValidationError when the norm is off by more than 1e-9 otherwise.
StateVector input_state(const CircuitDescription& circuit);

struct CircuitRun {
  StateVector final_state{0};
  std::optional<OutcomeDistribution> distribution;
  std::optional<Pattern> postselected_pattern;
  std::optional<PostselectResult> postselected;
};

/// Applies every element. With a measure directive, also computes the
/// distribution, or the single branch when a postselect pattern is given
/// (`postselect_override` wins over the file's pattern).
CircuitRun run_circuit(const CircuitDescription& circuit,
                       const std::optional<Pattern>& postselect_override = std::nullopt);

}  // namespace fockopt
