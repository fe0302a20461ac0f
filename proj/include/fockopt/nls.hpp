#pragma once

#include <Eigen/Core>

#include <map>
#include <numbers>
#include <optional>

#include "fockopt/fock_state.hpp"
#include "fockopt/linear_optics.hpp"
#include "fockopt/measurement.hpp"

namespace fockopt {

/// Amplitudes of |0>, |1>, |2> of one mode.
using Qutrit = Eigen::Vector3cd;

inline constexpr double kQutritNormTolerance = 1e-9;

/// α|0> + β|1> + γ|2> on a single mode.
struct InputQutrit {
  Complex alpha;
  Complex beta;
  Complex gamma;

  static InputQutrit from(const Qutrit& v) { return {v(0), v(1), v(2)}; }
  Qutrit amplitudes() const { return {alpha, beta, gamma}; }
  double norm_squared() const { return amplitudes().squaredNorm(); }
  /// Throws ValidationError for the zero qutrit.
  InputQutrit normalized() const;
  /// Throws ValidationError naming the deficit when |norm² - 1| > tolerance.
  void require_normalized(double tolerance = kQutritNormTolerance) const;
  StateVector to_state() const;
};

/// θ in (0, π/4) with sin2θ = 2/√5; both heralds then succeed with
/// probability 1/10 for every input.
double canonical_nls_theta();

/// Mode layout of the gate: input on 0, ancilla on 1 (sent to the
/// detectors) and 2 (the output mode). The mixing beam splitter acts on
/// (0, 1) at π/4 and the detectors watch modes 0 and 1.
inline constexpr std::size_t kInputMode = 0;
inline constexpr std::size_t kAncillaMode = 1;
inline constexpr std::size_t kOutputMode = 2;
inline constexpr double kMixingTheta = std::numbers::pi / 4.0;

inline const Pattern kHeraldTwoZero{2, 0};
inline const Pattern kHeraldZeroTwo{0, 2};

inline constexpr double kNlsCorrectionPhi = std::numbers::pi;
inline constexpr double kTeleportCorrectionPhi = std::numbers::pi / 2.0;

/// Which beam-splitter implementation drives the circuit.
enum class BeamSplitterRoute { expansion, oracle };

struct HeraldBranch {
  Pattern pattern;
  double probability = 0.0;
  /// Projection <pattern| Ψ_out onto the output mode, before normalization.
  Qutrit coefficients = Qutrit::Zero();
  /// Normalized residual before any correction.
  Qutrit raw = Qutrit::Zero();
  /// Phase applied by the herald correction, if any.
  std::optional<double> correction_phi;
  /// Normalized residual after the correction.
  Qutrit output = Qutrit::Zero();
};

struct HeraldedGateReport {
  double theta = 0.0;
  InputQutrit input;
  HeraldBranch branch_2_0;
  HeraldBranch branch_0_2;
  double total_success_probability = 0.0;
  /// Sum over every non-heralding pattern.
  double failure_probability = 0.0;
  std::map<Pattern, double> other_outcomes;
};

using NlsReport = HeraldedGateReport;

/// |1,1> through the ancilla beam splitter on modes (0, 1).
StateVector build_ancilla(double theta, BeamSplitterRoute route = BeamSplitterRoute::expansion);

/// Full three-mode state after the mixing beam splitter, before detection.
StateVector nls_circuit_state(const InputQutrit& input, double theta,
                              BeamSplitterRoute route = BeamSplitterRoute::expansion);

/// Uncorrected branch for one of the two herald patterns. Throws
/// StructuralError for any other pattern.
HeraldBranch nls_branch_state(const InputQutrit& input, double theta, const Pattern& pattern,
                              BeamSplitterRoute route = BeamSplitterRoute::expansion);

/// Runs the gate. Branch (2,0) is reported as measured; branch (0,2) gets a
/// π phase shift on the output mode.
NlsReport nls_gate(const InputQutrit& input, double theta = canonical_nls_theta(),
                   BeamSplitterRoute route = BeamSplitterRoute::expansion);

/// Symmetric ancilla splitter (θ = π/4) with input α|0> + γ|2>. Both
/// branches carry α|0> - γ|2> and are corrected by a π/2 phase shift.
HeraldedGateReport teleport_vacuum_two_photon(Complex alpha, Complex gamma,
                                              BeamSplitterRoute route = BeamSplitterRoute::expansion);

/// Residual single-mode state as (|0>,|1>,|2>) amplitudes. Throws
/// std::logic_error if the state has support beyond two photons.
Qutrit to_qutrit(const StateVector& single_mode);

StateVector from_qutrit(const Qutrit& q);

}  // namespace fockopt
