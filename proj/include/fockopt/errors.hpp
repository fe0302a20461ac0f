#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockopt {

/// Malformed arguments: mismatched lengths, negative occupations, mode
/// indices out of range, invalid measurement specs.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Well-formed input that violates a physical precondition (e.g. an
/// unnormalized qutrit).
class ValidationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Syntax error in a circuit description. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Syntactically valid circuit description with inconsistent content.
/// `field_path()` names the offending field, e.g. "elements[1].modes[0]".
class SemanticError : public std::runtime_error {
 public:
  SemanticError(std::string field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what),
        field_path_(std::move(field_path)) {}

  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

}  // namespace fockopt
