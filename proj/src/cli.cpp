#include "fockopt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "fockopt/circuit_io.hpp"
#include "fockopt/nls.hpp"

namespace fockopt {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;

std::string sig12(double v) { return format_double(v, 12); }

std::string fixed10(double v) {
  if (v == 0.0) v = 0.0;
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 10);
  return std::string(buf.data(), end);
}

std::string complex_human(Complex c) {
  const double im = c.imag() == 0.0 ? 0.0 : c.imag();
  return fixed10(c.real()) + (std::signbit(im) ? "-" : "+") + fixed10(std::abs(im)) + "i";
}

std::string complex_machine(Complex c) { return sig12(c.real()) + " " + sig12(c.imag()); }

std::string label(const FockBasisState& ket) {
  return ket.mode_count() == 0 ? "-" : format_pattern(ket.occupations());
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string correction_name(const HeraldBranch& b) {
  return b.correction_phi ? "ps:" + sig12(*b.correction_phi) : "none";
}

void print_report(const HeraldedGateReport& r, const std::string& title, std::ostream& out) {
  out << "# " << title << "\n";
  out << "# theta = " << fixed10(r.theta) << " rad\n";
  out << "# input (alpha, beta, gamma) = (" << complex_human(r.input.alpha) << ", "
      << complex_human(r.input.beta) << ", " << complex_human(r.input.gamma) << ")\n";
  out << "# " << pad("branch", 8) << pad("probability", 15) << pad("correction", 18)
      << "output (|0>, |1>, |2>)\n";
  for (const auto* b : {&r.branch_2_0, &r.branch_0_2}) {
    out << "# " << pad(format_pattern(b->pattern), 8) << pad(fixed10(b->probability), 15)
        << pad(correction_name(*b), 18) << complex_human(b->output(0)) << "  "
        << complex_human(b->output(1)) << "  " << complex_human(b->output(2)) << "\n";
  }
  out << "# total success probability " << fixed10(r.total_success_probability) << "\n";
  out << "# failure probability       " << fixed10(r.failure_probability) << "\n";

  out << "theta " << sig12(r.theta) << "\n";
  out << "input alpha " << complex_machine(r.input.alpha) << "\n";
  out << "input beta " << complex_machine(r.input.beta) << "\n";
  out << "input gamma " << complex_machine(r.input.gamma) << "\n";
  for (const auto* b : {&r.branch_2_0, &r.branch_0_2}) {
    const auto p = format_pattern(b->pattern);
    out << "branch " << p << " probability " << sig12(b->probability) << " correction "
        << correction_name(*b) << "\n";
    for (int n = 0; n < 3; ++n) {
      out << "branch " << p << " raw " << n << " " << complex_machine(b->raw(n)) << "\n";
    }
    for (int n = 0; n < 3; ++n) {
      out << "branch " << p << " output " << n << " " << complex_machine(b->output(n)) << "\n";
    }
  }
  out << "total_success_probability " << sig12(r.total_success_probability) << "\n";
  out << "failure_probability " << sig12(r.failure_probability) << "\n";
}

InputQutrit normalize_with_notice(const InputQutrit& q, std::ostream& out) {
  const double n2 = q.norm_squared();
  if (std::abs(n2 - 1.0) <= kQutritNormTolerance) return q;
  out << "# notice: input normalized (norm^2 was " << sig12(n2) << ")\n";
  return q.normalized();
}

void print_residual(const std::string& pattern, const StateVector& residual, std::ostream& out) {
  for (const auto& [ket, amp] : residual) {
    out << "residual " << pattern << " " << label(ket) << " " << complex_machine(amp) << "\n";
  }
}

void print_run(const CircuitRun& run, std::ostream& out) {
  if (run.postselected) {
    const auto p = format_pattern(*run.postselected_pattern);
    out << "# postselected on pattern " << p << "\n";
    out << "# probability " << fixed10(run.postselected->probability) << "\n";
    out << "postselect " << p << " probability " << sig12(run.postselected->probability) << "\n";
    if (run.postselected->residual) {
      print_residual(p, *run.postselected->residual, out);
    } else {
      out << "# pattern has no support\n";
    }
    return;
  }
  if (run.distribution) {
    out << "# outcome distribution (" << run.distribution->entries.size() << " patterns)\n";
    for (const auto& [pattern, outcome] : run.distribution->entries) {
      out << "# " << pad(format_pattern(pattern), 10) << fixed10(outcome.probability) << "\n";
    }
    for (const auto& [pattern, outcome] : run.distribution->entries) {
      const auto p = format_pattern(pattern);
      out << "outcome " << p << " probability " << sig12(outcome.probability) << "\n";
      print_residual(p, outcome.residual, out);
    }
    out << "total_probability " << sig12(run.distribution->total_probability()) << "\n";
    return;
  }
  out << "# final state (" << run.final_state.size() << " kets)\n";
  for (const auto& [ket, amp] : run.final_state) {
    out << "amplitude " << label(ket) << " " << complex_machine(amp) << "\n";
  }
  out << "norm_squared " << sig12(norm_squared(run.final_state)) << "\n";
}

}  // namespace

Complex parse_complex(const std::string& text) {
  auto read = [&text](const char* first, const char* last) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
      throw ValidationError("malformed complex number '" + text + "'; expected re or re,im");
    }
    return v;
  };
  const char* begin = text.data();
  const char* end = begin + text.size();
  const char* comma = std::find(begin, end, ',');
  if (comma == end) return {read(begin, end), 0.0};
  return {read(begin, comma), read(comma + 1, end)};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Fock-space simulator for linear-optical circuits", "fockopt"};
  app.require_subcommand(1);

  std::string alpha = "1", beta = "0", gamma = "0";
  std::optional<double> theta;
  auto* nls = app.add_subcommand("nls", "Teleportation-based nonlinear sign gate");
  nls->add_option("--alpha", alpha, "Amplitude of |0> (re or re,im)")->required();
  nls->add_option("--beta", beta, "Amplitude of |1> (re or re,im)")->required();
  nls->add_option("--gamma", gamma, "Amplitude of |2> (re or re,im)")->required();
  nls->add_option("--theta", theta, "Ancilla beam-splitter angle in radians");

  std::string circuit_path;
  std::string postselect_text;
  auto* run = app.add_subcommand("run", "Execute a circuit file");
  run->add_option("file", circuit_path, "Circuit description")->required();
  run->add_option("--postselect", postselect_text, "Detector pattern, e.g. 2,0");

  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> heralds;
  auto* sample = app.add_subcommand("sample", "Monte Carlo detector statistics");
  sample->add_option("file", circuit_path, "Circuit description")->required();
  sample->add_option("--shots", shots, "Number of shots")->required();
  sample->add_option("--seed", seed, "RNG seed (std::mt19937_64)")->required();
  sample->add_option("--herald", heralds, "Pattern counted as success (repeatable)");

  auto* teleport = app.add_subcommand("teleport02", "Teleport a |0>/|2> superposition");
  teleport->add_option("--alpha", alpha, "Amplitude of |0> (re or re,im)")->required();
  teleport->add_option("--gamma", gamma, "Amplitude of |2> (re or re,im)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*nls) {
      const InputQutrit raw{parse_complex(alpha), parse_complex(beta), parse_complex(gamma)};
      const auto input = normalize_with_notice(raw, out);
      print_report(nls_gate(input, theta.value_or(canonical_nls_theta())), "nonlinear sign gate",
                   out);
    } else if (*teleport) {
      const InputQutrit raw{parse_complex(alpha), 0.0, parse_complex(gamma)};
      const auto input = normalize_with_notice(raw, out);
      print_report(teleport_vacuum_two_photon(input.alpha, input.gamma),
                   "vacuum/two-photon teleportation", out);
    } else if (*run) {
      const auto circuit = parse_circuit_file(circuit_path);
      std::optional<Pattern> pattern;
      if (!postselect_text.empty()) pattern = parse_pattern(postselect_text);
      print_run(run_circuit(circuit, pattern), out);
    } else if (*sample) {
      const auto circuit = parse_circuit_file(circuit_path);
      if (!circuit.measure) throw ValidationError("circuit has no measure directive to sample");
      std::vector<Pattern> herald_patterns;
      for (const auto& h : heralds) herald_patterns.push_back(parse_pattern(h));

      const auto state = run_circuit(CircuitDescription{circuit.mode_count, circuit.normalize,
                                                        circuit.input_terms, circuit.elements,
                                                        std::nullopt})
                             .final_state;
      const auto counts = sample_outcomes(state, MeasurementSpec{circuit.measure->modes}, shots, seed);

      out << "# " << shots << " shots, seed " << seed << " (std::mt19937_64, inverse CDF)\n";
      out << "seed " << seed << "\n";
      out << "shots " << shots << "\n";
      std::uint64_t herald_hits = 0;
      for (const auto& [p, n] : counts) {
        out << "count " << format_pattern(p) << " " << n << " "
            << sig12(static_cast<double>(n) / static_cast<double>(shots)) << "\n";
        if (std::find(herald_patterns.begin(), herald_patterns.end(), p) != herald_patterns.end()) {
          herald_hits += n;
        }
      }
      if (!herald_patterns.empty()) {
        const double freq = static_cast<double>(herald_hits) / static_cast<double>(shots);
        out << "# herald frequency " << fixed10(freq) << "\n";
        out << "herald_frequency " << sig12(freq) << "\n";
      }
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SemanticError& e) {
    err << "semantic error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const StructuralError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace fockopt
