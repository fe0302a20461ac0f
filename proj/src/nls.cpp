#include "fockopt/nls.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fockopt {

namespace {

StateVector beam_split(const StateVector& s, const BeamSplitter& bs, BeamSplitterRoute route) {
  return route == BeamSplitterRoute::oracle ? oracle_apply_beam_splitter(s, bs)
                                            : apply_beam_splitter(s, bs);
}

const MeasurementSpec& detectors() {
  static const MeasurementSpec spec{{kInputMode, kAncillaMode}};
  return spec;
}

HeraldBranch project_branch(const StateVector& out, const Pattern& pattern,
                            std::optional<double> correction_phi) {
  HeraldBranch branch;
  branch.pattern = pattern;
  for (int n = 0; n <= 2; ++n) {
    branch.coefficients(n) = out.amplitude(FockBasisState{pattern[0], pattern[1], n});
  }

  auto selected = postselect(out, detectors(), pattern);
  branch.probability = selected.probability;
  branch.correction_phi = correction_phi;
  if (!selected.residual) return branch;

  branch.raw = to_qutrit(*selected.residual);
  branch.output = correction_phi
                      ? to_qutrit(apply_phase_shifter(*selected.residual, {0, *correction_phi}))
                      : branch.raw;
  return branch;
}

HeraldedGateReport run_heralded(const InputQutrit& input, double theta, BeamSplitterRoute route,
                                std::optional<double> phi_2_0, std::optional<double> phi_0_2) {
  input.require_normalized();
  const StateVector out = nls_circuit_state(input, theta, route);

  HeraldedGateReport report;
  report.theta = theta;
  report.input = input;
  report.branch_2_0 = project_branch(out, kHeraldTwoZero, phi_2_0);
  report.branch_0_2 = project_branch(out, kHeraldZeroTwo, phi_0_2);
  report.total_success_probability = report.branch_2_0.probability + report.branch_0_2.probability;

  for (const auto& [pattern, outcome] : outcome_distribution(out, detectors()).entries) {
    if (pattern == kHeraldTwoZero || pattern == kHeraldZeroTwo) continue;
    report.other_outcomes.emplace(pattern, outcome.probability);
    report.failure_probability += outcome.probability;
  }
  return report;
}

}  // namespace

InputQutrit InputQutrit::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw ValidationError("cannot normalize a qutrit with norm^2 = " + std::to_string(n2));
  }
  return from(amplitudes() / std::sqrt(n2));
}

void InputQutrit::require_normalized(double tolerance) const {
  const double n2 = norm_squared();
  const double deficit = 1.0 - n2;
  if (!(std::abs(deficit) <= tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "input qutrit is not normalized: |alpha|^2+|beta|^2+|gamma|^2 = " << n2
        << " (deficit " << deficit << ", tolerance " << tolerance << ")";
    throw ValidationError(msg.str());
  }
}

StateVector InputQutrit::to_state() const { return from_qutrit(amplitudes()); }

double canonical_nls_theta() { return 0.5 * std::asin(2.0 / std::sqrt(5.0)); }

Qutrit to_qutrit(const StateVector& single_mode) {
  if (single_mode.mode_count() != 1) {
    throw StructuralError("qutrit conversion needs a single-mode state, got " +
                          std::to_string(single_mode.mode_count()) + " modes");
  }
  Qutrit q = Qutrit::Zero();
  for (const auto& [ket, amp] : single_mode) {
    if (ket[0] > 2) {
      throw std::logic_error("residual has support on |" + std::to_string(ket[0]) + ">");
    }
    q(ket[0]) = amp;
  }
  return q;
}

StateVector from_qutrit(const Qutrit& q) {
  return make_state(1, {{{0}, q(0)}, {{1}, q(1)}, {{2}, q(2)}});
}

StateVector build_ancilla(double theta, BeamSplitterRoute route) {
  return beam_split(make_state(2, {{{1, 1}, 1.0}}), BeamSplitter{0, 1, theta}, route);
}

StateVector nls_circuit_state(const InputQutrit& input, double theta, BeamSplitterRoute route) {
  const StateVector joint = tensor(input.to_state(), build_ancilla(theta, route));
  return beam_split(joint, BeamSplitter{kInputMode, kAncillaMode, kMixingTheta}, route);
}

HeraldBranch nls_branch_state(const InputQutrit& input, double theta, const Pattern& pattern,
                              BeamSplitterRoute route) {
  if (pattern != kHeraldTwoZero && pattern != kHeraldZeroTwo) {
    throw StructuralError("pattern " + format_pattern(pattern) +
                          " is not a herald; expected 2,0 or 0,2");
  }
  input.require_normalized();
  return project_branch(nls_circuit_state(input, theta, route), pattern, std::nullopt);
}

NlsReport nls_gate(const InputQutrit& input, double theta, BeamSplitterRoute route) {
  return run_heralded(input, theta, route, std::nullopt, kNlsCorrectionPhi);
}

HeraldedGateReport teleport_vacuum_two_photon(Complex alpha, Complex gamma,
                                              BeamSplitterRoute route) {
  return run_heralded(InputQutrit{alpha, 0.0, gamma}, std::numbers::pi / 4.0, route,
                      kTeleportCorrectionPhi, kTeleportCorrectionPhi);
}

}  // namespace fockopt
