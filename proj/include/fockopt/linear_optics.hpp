#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <variant>

#include "fockopt/fock_state.hpp"

namespace fockopt {

/// Lossless two-mode beam splitter with real mixing angle `theta`.
///
/// Creation operators transform as
///   a†_A -> cosθ a†_A - sinθ a†_B
///   a†_B -> sinθ a†_A + cosθ a†_B
/// so |1,1> -> (sin2θ/√2)(|2,0> - |0,2>) + cos2θ |1,1>.
struct BeamSplitter {
  std::size_t mode_a = 0;
  std::size_t mode_b = 1;
  double theta = 0.0;

  double reflectance() const { return std::sin(theta); }
  double transmittance() const { return std::cos(theta); }

  friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

/// exp(i·phi·n) on the photon number n of `mode`.
struct PhaseShifter {
  std::size_t mode = 0;
  double phi = 0.0;

  friend bool operator==(const PhaseShifter&, const PhaseShifter&) = default;
};

using OpticalElement = std::variant<BeamSplitter, PhaseShifter>;

/// Largest two-mode photon number the binomial expansion supports (20! fits
/// in 64 bits).
inline constexpr int kMaxExpansionPhotons = 20;

/// Default total-photon cap for the generator-exponential oracle.
inline constexpr int kDefaultOracleSectorCap = 8;

/// (cos, sin) of `angle`, exact at multiples of π/4.
std::pair<double, double> cos_sin(double angle);

/// exp(i·angle), exact at multiples of π/2.
Complex unit_phase(double angle);

/// Binomial creation-operator expansion. Throws StructuralError for bad
/// mode indices and CapacityError past kMaxExpansionPhotons on the pair.
StateVector apply_beam_splitter(const StateVector& s, const BeamSplitter& bs);

StateVector apply_phase_shifter(const StateVector& s, const PhaseShifter& ps);

StateVector apply(const StateVector& s, const OpticalElement& element);

/// Independent beam-splitter route: per photon-number sector of the mode
/// pair, exponentiates the anti-Hermitian generator a†_A a_B - a†_B a_A.
/// The generator sign is fixed by matching the one-photon sector against
/// [[cosθ, sinθ], [-sinθ, cosθ]] acting on (c_10, c_01). Throws
/// CapacityError when any ket holds more than `sector_cap` photons.
StateVector oracle_apply_beam_splitter(const StateVector& s, const BeamSplitter& bs,
                                       int sector_cap = kDefaultOracleSectorCap);

}  // namespace fockopt
