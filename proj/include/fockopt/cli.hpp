#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fockopt/fock_state.hpp"

namespace fockopt {

/// Entry point of the `fockopt` command-line tool.
///
/// Subcommands: nls, run, sample, teleport02. Human-readable lines start
/// with '#'; every other line is a machine-readable record with a fixed
/// field order and 12 significant digits. Returns 0 on success, 1 on a
/// usage or validation error and 2 on a circuit-file parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "re" or "re,im" (scientific notation allowed, locale independent).
/// Throws ValidationError on malformed text.
Complex parse_complex(const std::string& text);

}  // namespace fockopt
