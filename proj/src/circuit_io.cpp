#include "fockopt/circuit_io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace fockopt {

namespace {

using nlohmann::json;

struct DuplicateKey {
  std::string key;
};

json parse_object(std::string_view body, std::size_t line, std::size_t column) {
  std::vector<std::set<std::string>> open_objects;
  json::parser_callback_t track_keys = [&open_objects](int, json::parse_event_t event,
                                                       json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        open_objects.emplace_back();
        break;
      case json::parse_event_t::object_end:
        open_objects.pop_back();
        break;
      case json::parse_event_t::key:
        if (!open_objects.back().insert(parsed.get<std::string>()).second) {
          throw DuplicateKey{parsed.get<std::string>()};
        }
        break;
      default:
        break;
    }
    return true;
  };

  json value;
  try {
    value = json::parse(body.begin(), body.end(), track_keys);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ..." prefix.
    if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(line, column + offset, "malformed JSON body: " + what);
  } catch (const DuplicateKey& dup) {
    throw ParseError(line, column, "duplicate key \"" + dup.key + "\"");
  }
  if (!value.is_object()) throw ParseError(line, column, "directive body must be a JSON object");
  return value;
}

// Field access with typed errors; every failure names the field path.
class Fields {
 public:
  Fields(const json& obj, std::string path, std::size_t line)
      : obj_(obj), path_(std::move(path)), line_(line) {}

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, value] : obj_.items()) {
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return key == k; }) ==
          keys.end()) {
        fail(path_ + "." + key, "unknown key");
      }
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }

  const json& required(const char* key) const {
    if (!obj_.contains(key)) fail(path_ + "." + key, "missing required key");
    return obj_.at(key);
  }

  double number(const char* key) const { return as_number(required(key), sub(key)); }

  long long integer(const char* key) const { return as_integer(required(key), sub(key)); }

  std::vector<long long> integers(const char* key) const {
    const json& arr = required(key);
    if (!arr.is_array()) fail(sub(key), "expected an array of integers");
    std::vector<long long> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(as_integer(arr[i], sub(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  bool boolean(const char* key) const {
    const json& v = required(key);
    if (!v.is_boolean()) fail(sub(key), "expected true or false");
    return v.get<bool>();
  }

  std::string sub(const char* key) const { return path_ + "." + key; }

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw SemanticError(path, what + " (line " + std::to_string(line_) + ")");
  }

 private:
  double as_number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "expected a finite number");
    return d;
  }

  long long as_integer(const json& v, const std::string& path) const {
    if (v.is_number_unsigned()) {
      const auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
        fail(path, "integer too large");
      }
      return static_cast<long long>(u);
    }
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
  }

  const json& obj_;
  std::string path_;
  std::size_t line_;
};

std::size_t mode_index(const Fields& f, long long value, std::size_t mode_count,
                       const std::string& path) {
  if (value < 0 || static_cast<std::size_t>(value) >= mode_count) {
    f.fail(path, "mode index " + std::to_string(value) + " out of range [0, " +
                     std::to_string(mode_count) + ")");
  }
  return static_cast<std::size_t>(value);
}

int photon_count(const Fields& f, long long value, const std::string& path) {
  if (value < 0) f.fail(path, "photon count must be non-negative");
  if (value > std::numeric_limits<int>::max()) f.fail(path, "photon count too large");
  return static_cast<int>(value);
}

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

void append_array(std::string& out, const auto& values) {
  out += '[';
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ", ";
    out += std::to_string(v);
    first = false;
  }
  out += ']';
}

}  // namespace

std::string format_double(double value, int significant) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general,
                    significant);
  return std::string(buf.data(), end);
}

CircuitDescription parse_circuit(std::string_view text) {
  CircuitDescription circuit;
  bool seen_header = false;
  bool seen_measure = false;
  std::size_t line_no = 0;
  std::size_t directives = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank_or_comment(line)) continue;

    const std::size_t kw_begin = line.find_first_not_of(" \t");
    std::size_t kw_end = line.find_first_of(" \t{", kw_begin);
    if (kw_end == std::string_view::npos) kw_end = line.size();
    const std::string keyword(line.substr(kw_begin, kw_end - kw_begin));
    const std::size_t body_begin = line.find_first_not_of(" \t", kw_end);
    if (body_begin == std::string_view::npos) {
      throw ParseError(line_no, line.size() + 1, "directive '" + keyword + "' needs a JSON body");
    }
    const std::size_t kw_column = kw_begin + 1;

    if (keyword != "circuit" && keyword != "input" && keyword != "bs" && keyword != "ps" &&
        keyword != "measure") {
      throw ParseError(line_no, kw_column, "unknown directive '" + keyword + "'");
    }
    if (!seen_header && keyword != "circuit") {
      throw ParseError(line_no, kw_column, "expected 'circuit' as the first directive");
    }
    if (seen_header && keyword == "circuit") {
      throw ParseError(line_no, kw_column, "duplicate 'circuit' directive");
    }
    if (seen_measure) {
      throw ParseError(line_no, kw_column, "'measure' must be the last directive");
    }

    const json body = parse_object(line.substr(body_begin), line_no, body_begin + 1);
    ++directives;

    if (keyword == "circuit") {
      Fields f(body, "circuit", line_no);
      f.allow_only({"modes", "normalize"});
      const long long modes = f.integer("modes");
      if (modes <= 0) f.fail(f.sub("modes"), "mode count must be positive");
      circuit.mode_count = static_cast<std::size_t>(modes);
      if (f.has("normalize")) circuit.normalize = f.boolean("normalize");
      seen_header = true;
    } else if (keyword == "input") {
      const std::string path = "input[" + std::to_string(circuit.input_terms.size()) + "]";
      Fields f(body, path, line_no);
      f.allow_only({"occ", "re", "im"});
      InputTerm term;
      const auto occ = f.integers("occ");
      if (occ.size() != circuit.mode_count) {
        f.fail(f.sub("occ"), "expected " + std::to_string(circuit.mode_count) +
                                 " occupations, got " + std::to_string(occ.size()));
      }
      for (std::size_t i = 0; i < occ.size(); ++i) {
        term.occupations.push_back(
            photon_count(f, occ[i], f.sub("occ") + "[" + std::to_string(i) + "]"));
      }
      term.re = f.number("re");
      if (f.has("im")) term.im = f.number("im");
      circuit.input_terms.push_back(std::move(term));
    } else if (keyword == "bs") {
      const std::string path = "elements[" + std::to_string(circuit.elements.size()) + "]";
      Fields f(body, path, line_no);
      f.allow_only({"modes", "theta"});
      const auto modes = f.integers("modes");
      if (modes.size() != 2) f.fail(f.sub("modes"), "beam splitter needs exactly two modes");
      BeamSplitter bs;
      bs.mode_a = mode_index(f, modes[0], circuit.mode_count, f.sub("modes") + "[0]");
      bs.mode_b = mode_index(f, modes[1], circuit.mode_count, f.sub("modes") + "[1]");
      if (bs.mode_a == bs.mode_b) f.fail(f.sub("modes"), "beam splitter modes must differ");
      bs.theta = f.number("theta");
      circuit.elements.emplace_back(bs);
    } else if (keyword == "ps") {
      const std::string path = "elements[" + std::to_string(circuit.elements.size()) + "]";
      Fields f(body, path, line_no);
      f.allow_only({"mode", "phi"});
      PhaseShifter ps;
      ps.mode = mode_index(f, f.integer("mode"), circuit.mode_count, f.sub("mode"));
      ps.phi = f.number("phi");
      circuit.elements.emplace_back(ps);
    } else {
      Fields f(body, "measure", line_no);
      f.allow_only({"modes", "postselect"});
      MeasureDirective m;
      const auto modes = f.integers("modes");
      if (modes.empty()) f.fail(f.sub("modes"), "at least one mode must be measured");
      std::set<std::size_t> seen;
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto path = f.sub("modes") + "[" + std::to_string(i) + "]";
        const auto mode = mode_index(f, modes[i], circuit.mode_count, path);
        if (!seen.insert(mode).second) {
          f.fail(path, "mode " + std::to_string(mode) + " measured twice");
        }
        m.modes.push_back(mode);
      }
      if (f.has("postselect")) {
        const auto counts = f.integers("postselect");
        if (counts.size() != m.modes.size()) {
          f.fail(f.sub("postselect"), "pattern length " + std::to_string(counts.size()) +
                                          " does not match " + std::to_string(m.modes.size()) +
                                          " measured modes");
        }
        Pattern pattern;
        for (std::size_t i = 0; i < counts.size(); ++i) {
          pattern.push_back(
              photon_count(f, counts[i], f.sub("postselect") + "[" + std::to_string(i) + "]"));
        }
        m.postselect = std::move(pattern);
      }
      circuit.measure = std::move(m);
      seen_measure = true;
    }
  }

  if (directives == 0) throw ParseError(1, 1, "empty circuit description");
  if (circuit.input_terms.empty()) {
    throw SemanticError("input", "at least one input term is required");
  }
  return circuit;
}

CircuitDescription parse_circuit(std::istream& in) {
  const std::string text(std::istreambuf_iterator<char>(in), {});
  return parse_circuit(std::string_view(text));
}

CircuitDescription parse_circuit_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open circuit file '" + path + "'");
  return parse_circuit(in);
}

std::string serialize_circuit(const CircuitDescription& circuit) {
  std::string out;
  out += "circuit {\"modes\": " + std::to_string(circuit.mode_count) +
         ", \"normalize\": " + (circuit.normalize ? "true" : "false") + "}\n";
  for (const auto& term : circuit.input_terms) {
    out += "input {\"occ\": ";
    append_array(out, term.occupations);
    out += ", \"re\": " + format_double(term.re) + ", \"im\": " + format_double(term.im) + "}\n";
  }
  for (const auto& element : circuit.elements) {
    if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
      out += "bs {\"modes\": [" + std::to_string(bs->mode_a) + ", " + std::to_string(bs->mode_b) +
             "], \"theta\": " + format_double(bs->theta) + "}\n";
    } else {
      const auto& ps = std::get<PhaseShifter>(element);
      out += "ps {\"mode\": " + std::to_string(ps.mode) + ", \"phi\": " + format_double(ps.phi) +
             "}\n";
    }
  }
  if (circuit.measure) {
    out += "measure {\"modes\": ";
    append_array(out, circuit.measure->modes);
    if (circuit.measure->postselect) {
      out += ", \"postselect\": ";
      append_array(out, *circuit.measure->postselect);
    }
    out += "}\n";
  }
  return out;
}

StateVector input_state(const CircuitDescription& circuit) {
  std::vector<std::pair<std::vector<int>, Complex>> terms;
  terms.reserve(circuit.input_terms.size());
  for (const auto& t : circuit.input_terms) terms.emplace_back(t.occupations, Complex{t.re, t.im});
  StateVector s = make_state(circuit.mode_count, terms);
  if (circuit.normalize) return normalized(s);

  const double n2 = norm_squared(s);
  if (!(std::abs(n2 - 1.0) <= 1e-9)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "input state has norm^2 = " << n2 << " (deficit " << 1.0 - n2
        << "); set \"normalize\": true to rescale";
    throw ValidationError(msg.str());
  }
  return s;
}

CircuitRun run_circuit(const CircuitDescription& circuit,
                       const std::optional<Pattern>& postselect_override) {
  CircuitRun run;
  run.final_state = input_state(circuit);
  for (const auto& element : circuit.elements) run.final_state = fockopt::apply(run.final_state, element);

  auto pattern = postselect_override;
  if (!pattern && circuit.measure) pattern = circuit.measure->postselect;
  if (pattern && !circuit.measure) {
    throw ValidationError("postselection requested but the circuit has no measure directive");
  }
  if (!circuit.measure) return run;

  const MeasurementSpec spec{circuit.measure->modes};
  if (pattern) {
    run.postselected_pattern = pattern;
    run.postselected = postselect(run.final_state, spec, *pattern);
  } else {
    run.distribution = outcome_distribution(run.final_state, spec);
  }
  return run;
}

}  // namespace fockopt
