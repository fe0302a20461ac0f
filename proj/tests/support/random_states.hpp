#pragma once

#include <complex>
#include <random>
#include <vector>

#include "fockopt/fock_state.hpp"
#include "fockopt/nls.hpp"

namespace fockopt::testing {

inline std::complex<double> random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

/// Normalized state on `modes` modes with `terms` random kets of at most
/// `max_photons` photons each.
inline StateVector random_state(std::mt19937_64& rng, std::size_t modes, int max_photons,
                                int terms) {
  StateVector s(modes);
  while (s.empty()) {
    for (int t = 0; t < terms; ++t) {
      std::vector<int> occ(modes, 0);
      std::uniform_int_distribution<int> total_dist(0, max_photons);
      std::uniform_int_distribution<std::size_t> mode_dist(0, modes - 1);
      const int total = total_dist(rng);
      for (int p = 0; p < total; ++p) ++occ[mode_dist(rng)];
      s.add(FockBasisState(occ), random_complex(rng));
    }
    s.prune();
  }
  return normalized(s);
}

inline InputQutrit random_qutrit(std::mt19937_64& rng) {
  return InputQutrit{random_complex(rng), random_complex(rng), random_complex(rng)}.normalized();
}

inline double random_angle(std::mt19937_64& rng, double lo = -3.2, double hi = 3.2) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace fockopt::testing
