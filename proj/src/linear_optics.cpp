#include "fockopt/linear_optics.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace fockopt {

namespace {

constexpr std::array<std::uint64_t, kMaxExpansionPhotons + 1> make_factorials() {
  std::array<std::uint64_t, kMaxExpansionPhotons + 1> f{};
  f[0] = 1;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * i;
  return f;
}

constexpr auto kFactorial = make_factorials();

constexpr std::uint64_t binomial(int n, int k) {
  return kFactorial[n] / (kFactorial[k] * kFactorial[n - k]);
}

// sqrt(k! (N-k)! / (m! n!)) from exact integers.
double fock_norm_ratio(int k, int total, int m, int n) {
  const auto num = static_cast<long double>(kFactorial[k] * kFactorial[total - k]);
  const auto den = static_cast<long double>(kFactorial[m] * kFactorial[n]);
  return static_cast<double>(std::sqrt(num / den));
}

void check_mode(const StateVector& s, std::size_t mode, const char* role) {
  if (mode >= s.mode_count()) {
    throw StructuralError(std::string(role) + " index " + std::to_string(mode) +
                          " out of range for a " + std::to_string(s.mode_count()) +
                          "-mode state");
  }
}

void check_pair(const StateVector& s, const BeamSplitter& bs) {
  check_mode(s, bs.mode_a, "beam splitter mode");
  check_mode(s, bs.mode_b, "beam splitter mode");
  if (bs.mode_a == bs.mode_b) {
    throw StructuralError("beam splitter needs two distinct modes, got " +
                          std::to_string(bs.mode_a) + " twice");
  }
}

// Real anti-Hermitian generator a†_A a_B - a†_B a_A on the sector with
// `total` photons, basis index k = photons in mode A.
Eigen::MatrixXd sector_generator(int total) {
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(total + 1, total + 1);
  for (int k = 0; k < total; ++k) {
    const double hop = std::sqrt(static_cast<double>((k + 1) * (total - k)));
    gen(k + 1, k) = hop;
    gen(k, k + 1) = -hop;
  }
  return gen;
}

// +1 or -1 such that exp(sign·θ·G) reproduces the one-photon rotation
// [[cosθ, sinθ], [-sinθ, cosθ]] on (c_10, c_01).
double generator_sign() {
  static const double sign = [] {
    constexpr double probe = 0.3;
    // Basis order is k = 0 (|0,1>), k = 1 (|1,0>); reorder to (c_10, c_01).
    Eigen::Matrix2d expected;
    expected << std::cos(probe), std::sin(probe), -std::sin(probe), std::cos(probe);
    for (double candidate : {1.0, -1.0}) {
      const Eigen::MatrixXd u = (candidate * probe * sector_generator(1)).exp();
      Eigen::Matrix2d reordered;
      reordered << u(1, 1), u(1, 0), u(0, 1), u(0, 0);
      if ((reordered - expected).cwiseAbs().maxCoeff() < 1e-14) return candidate;
    }
    throw std::logic_error("no generator sign reproduces the one-photon rotation");
  }();
  return sign;
}

}  // namespace

std::pair<double, double> cos_sin(double angle) {
  constexpr double eighth = std::numbers::pi / 4.0;
  const double steps = angle / eighth;
  const double nearest = std::round(steps);
  if (std::abs(steps - nearest) <= 1e-14 * std::max(1.0, std::abs(steps))) {
    constexpr double h = std::numbers::sqrt2 / 2.0;
    static constexpr std::array<std::pair<double, double>, 8> table{{
        {1.0, 0.0}, {h, h}, {0.0, 1.0}, {-h, h}, {-1.0, 0.0}, {-h, -h}, {0.0, -1.0}, {h, -h}}};
    const auto idx = static_cast<long long>(nearest) % 8;
    return table[static_cast<std::size_t>(idx < 0 ? idx + 8 : idx)];
  }
  return {std::cos(angle), std::sin(angle)};
}

Complex unit_phase(double angle) {
  constexpr double quarter = std::numbers::pi / 2.0;
  const double steps = angle / quarter;
  const double nearest = std::round(steps);
  if (std::abs(steps - nearest) <= 1e-14 * std::max(1.0, std::abs(steps))) {
    static constexpr std::array<Complex, 4> table{
        Complex{1.0, 0.0}, Complex{0.0, 1.0}, Complex{-1.0, 0.0}, Complex{0.0, -1.0}};
    const auto idx = static_cast<long long>(nearest) % 4;
    return table[static_cast<std::size_t>(idx < 0 ? idx + 4 : idx)];
  }
  return std::polar(1.0, angle);
}

StateVector apply_beam_splitter(const StateVector& s, const BeamSplitter& bs) {
  check_pair(s, bs);
  const auto [c, sn] = cos_sin(bs.theta);

  std::array<double, kMaxExpansionPhotons + 1> cos_pow{}, sin_pow{}, neg_sin_pow{};
  cos_pow[0] = sin_pow[0] = neg_sin_pow[0] = 1.0;
  for (int p = 1; p <= kMaxExpansionPhotons; ++p) {
    cos_pow[p] = cos_pow[p - 1] * c;
    sin_pow[p] = sin_pow[p - 1] * sn;
    neg_sin_pow[p] = neg_sin_pow[p - 1] * -sn;
  }

  StateVector out(s.mode_count());
  for (const auto& [ket, amp] : s) {
    const int m = ket[bs.mode_a];
    const int n = ket[bs.mode_b];
    const int total = m + n;
    if (total > kMaxExpansionPhotons) {
      throw CapacityError("beam splitter expansion supports at most " +
                          std::to_string(kMaxExpansionPhotons) + " photons on the mode pair, got " +
                          std::to_string(total));
    }
    // (c a†_A - s a†_B)^m (s a†_A + c a†_B)^n / sqrt(m! n!)
    std::array<double, kMaxExpansionPhotons + 1> coeff{};
    for (int i = 0; i <= m; ++i) {
      const double left = static_cast<double>(binomial(m, i)) * cos_pow[i] * neg_sin_pow[m - i];
      for (int j = 0; j <= n; ++j) {
        const double right = static_cast<double>(binomial(n, j)) * sin_pow[j] * cos_pow[n - j];
        coeff[i + j] += left * right;
      }
    }
    for (int k = 0; k <= total; ++k) {
      if (coeff[k] == 0.0) continue;
      out.add(ket.with(bs.mode_a, k).with(bs.mode_b, total - k),
              amp * (coeff[k] * fock_norm_ratio(k, total, m, n)));
    }
  }
  out.prune();
  return out;
}

StateVector apply_phase_shifter(const StateVector& s, const PhaseShifter& ps) {
  check_mode(s, ps.mode, "phase shifter mode");
  StateVector out(s.mode_count());
  for (const auto& [ket, amp] : s) out.add(ket, amp * unit_phase(ps.phi * ket[ps.mode]));
  out.prune();
  return out;
}

StateVector apply(const StateVector& s, const OpticalElement& element) {
  return std::visit(
      [&s](const auto& e) {
        if constexpr (std::is_same_v<std::decay_t<decltype(e)>, BeamSplitter>) {
          return apply_beam_splitter(s, e);
        } else {
          return apply_phase_shifter(s, e);
        }
      },
      element);
}

StateVector oracle_apply_beam_splitter(const StateVector& s, const BeamSplitter& bs,
                                       int sector_cap) {
  check_pair(s, bs);

  // Group amplitudes by (spectator occupations, photons on the pair).
  std::map<std::pair<FockBasisState, int>, Eigen::VectorXcd> sectors;
  for (const auto& [ket, amp] : s) {
    if (ket.total_photons() > sector_cap) {
      throw CapacityError("oracle sector cap " + std::to_string(sector_cap) +
                          " exceeded by a ket with " + std::to_string(ket.total_photons()) +
                          " photons");
    }
    const int total = ket[bs.mode_a] + ket[bs.mode_b];
    auto key = std::make_pair(ket.with(bs.mode_a, 0).with(bs.mode_b, 0), total);
    auto [it, inserted] = sectors.try_emplace(std::move(key), Eigen::VectorXcd::Zero(total + 1));
    it->second(ket[bs.mode_a]) += amp;
  }

  const double sign = generator_sign();
  std::map<int, Eigen::MatrixXd> unitaries;
  StateVector out(s.mode_count());
  for (const auto& [key, amps] : sectors) {
    const auto& [spectators, total] = key;
    auto it = unitaries.find(total);
    if (it == unitaries.end()) {
      it = unitaries.emplace(total, (sign * bs.theta * sector_generator(total)).exp()).first;
    }
    const Eigen::VectorXcd rotated = it->second.cast<Complex>() * amps;
    for (int k = 0; k <= total; ++k) {
      out.add(spectators.with(bs.mode_a, k).with(bs.mode_b, total - k), rotated(k));
    }
  }
  out.prune();
  return out;
}

}  // namespace fockopt
