#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fockopt/measurement.hpp"
#include "support/dense_fock.hpp"
#include "support/random_states.hpp"

using namespace fockopt;

namespace {

const double kCanonicalTheta = 0.5 * std::asin(2.0 / std::sqrt(5.0));

StateVector qutrit(Complex a, Complex b, Complex c) {
  return make_state(1, {{{0}, a}, {{1}, b}, {{2}, c}});
}

StateVector herald_toy() {
  return make_state(2, {{{2, 0}, std::sqrt(0.1)}, {{0, 2}, std::sqrt(0.1)}, {{1, 1}, std::sqrt(0.8)}});
}

}  // namespace

TEST_CASE("outcome distribution of the gate circuit") {
  const Complex a{0.5, 0.2}, b{-0.4, 0.1}, c{0.3, -0.65};
  const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
  const auto out = testing::dense_nls_circuit(a / n, b / n, c / n, kCanonicalTheta);
  const MeasurementSpec detectors{{0, 1}};
  const auto dist = outcome_distribution(out, detectors);

  const auto& first = dist.entries.at({2, 0});
  CHECK(std::abs(first.probability - 0.1) <= 1e-12);
  CHECK(max_abs_difference(first.residual, qutrit(a / n, b / n, -c / n)) <= 1e-12);

  const auto& second = dist.entries.at({0, 2});
  CHECK(std::abs(second.probability - 0.1) <= 1e-12);
  CHECK(max_abs_difference(second.residual, qutrit(a / n, -b / n, -c / n)) <= 1e-12);

  CHECK(std::abs(dist.total_probability() - 1.0) <= 1e-12);
  for (const auto& [pattern, outcome] : dist.entries) {
    CHECK(std::abs(norm_squared(outcome.residual) - 1.0) <= 1e-12);
    CHECK(outcome.residual.mode_count() == 1);
  }
}

TEST_CASE("vacuum measured on every mode") {
  const auto dist = outcome_distribution(StateVector::vacuum(3), {{0, 1, 2}});
  REQUIRE(dist.entries.size() == 1);
  const auto& [pattern, outcome] = *dist.entries.begin();
  CHECK(pattern == Pattern{0, 0, 0});
  CHECK(outcome.probability == 1.0);
  CHECK(outcome.residual.mode_count() == 0);
  CHECK(outcome.residual.amplitude(FockBasisState{}) == Complex(1.0));
}

TEST_CASE("postselect") {
  const double h = 1.0 / std::sqrt(3.0);
  const auto out = testing::dense_nls_circuit(h, h, h, kCanonicalTheta);
  const MeasurementSpec detectors{{0, 1}};

  SUBCASE("herald (2,0)") {
    const auto r = postselect(out, detectors, {2, 0});
    CHECK(std::abs(r.probability - 0.1) <= 1e-12);
    REQUIRE(r.residual);
    CHECK(max_abs_difference(*r.residual, qutrit(h, h, -h)) <= 1e-12);
  }
  SUBCASE("non-herald (1,1) carries probability 2/15") {
    // Frozen from a symbolic expansion of the full circuit; the dense
    // reference must agree before the library result is trusted.
    double dense_p = 0.0;
    for (int k = 0; k <= 4; ++k) dense_p += std::norm(out.amplitude({1, 1, k}));
    REQUIRE(std::abs(dense_p - 2.0 / 15.0) <= 1e-12);
    CHECK(std::abs(postselect(out, detectors, {1, 1}).probability - 2.0 / 15.0) <= 1e-12);
  }
  SUBCASE("pattern beyond the photon number") {
    const auto r = postselect(out, detectors, {5, 3});
    CHECK(r.probability == 0.0);
    CHECK_FALSE(r.residual);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(postselect(out, detectors, {2}), StructuralError);
    CHECK_THROWS_AS(postselect(out, detectors, {2, -1}), StructuralError);
    CHECK_THROWS_AS(postselect(out, {{0, 0}}, {2, 0}), StructuralError);
    CHECK_THROWS_AS(outcome_distribution(out, {{3}}), StructuralError);
  }
}

TEST_CASE("measurement invariants on random states") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_state(rng, 4, 5, 12);
    const MeasurementSpec spec{{3, 1}};
    const auto dist = outcome_distribution(s, spec);
    CHECK(std::abs(dist.total_probability() - 1.0) <= 1e-12);

    auto rotated = s;
    rotated *= std::polar(1.0, angle(rng));
    const auto rotated_dist = outcome_distribution(rotated, spec);

    for (const auto& [pattern, outcome] : dist.entries) {
      const auto r = postselect(s, spec, pattern);
      CHECK(r.probability == outcome.probability);
      REQUIRE(r.residual);
      CHECK(max_abs_difference(*r.residual, outcome.residual) == 0.0);
      CHECK(std::abs(norm_squared(outcome.residual) - 1.0) <= 1e-12);
      CHECK(equal_up_to_global_phase(outcome.residual, rotated_dist.entries.at(pattern).residual,
                                     1e-12));
    }
  }
}

TEST_CASE("sampling") {
  const MeasurementSpec both{{0, 1}};

  SUBCASE("herald frequency within the 3σ band") {
    constexpr std::uint64_t shots = 1'000'000;
    const auto counts = sample_outcomes(herald_toy(), both, shots, 42);
    const double freq =
        static_cast<double>(counts.at({2, 0}) + counts.at({0, 2})) / static_cast<double>(shots);
    CHECK(std::abs(freq - 0.2) <= 0.0012);
  }
  SUBCASE("deterministic distribution") {
    const auto counts = sample_outcomes(make_state(2, {{{1, 3}, Complex(0.0, 1.0)}}), both, 1000, 1);
    REQUIRE(counts.size() == 1);
    CHECK(counts.at({1, 3}) == 1000);
  }
  SUBCASE("seed determinism") {
    const auto first = sample_outcomes(herald_toy(), both, 10'000, 77);
    CHECK(first == sample_outcomes(herald_toy(), both, 10'000, 77));
    CHECK(first != sample_outcomes(herald_toy(), both, 10'000, 78));
  }
  SUBCASE("law of large numbers for every pattern") {
    std::mt19937_64 rng(8);
    const auto s = testing::random_state(rng, 3, 4, 10);
    const MeasurementSpec spec{{0, 2}};
    constexpr std::uint64_t shots = 200'000;
    const auto counts = sample_outcomes(s, spec, shots, 42);
    std::uint64_t total = 0;
    for (const auto& [pattern, outcome] : outcome_distribution(s, spec).entries) {
      const std::uint64_t n = counts.at(pattern);
      total += n;
      const double p = outcome.probability;
      if (p < 0.01) continue;
      const double freq = static_cast<double>(n) / shots;
      CHECK(std::abs(freq - p) <= 5.0 * std::sqrt(p * (1.0 - p) / shots));
    }
    CHECK(total == shots);
  }
  CHECK_THROWS_AS(sample_outcomes(herald_toy(), both, 0, 1), StructuralError);
}

TEST_CASE("pattern text") {
  CHECK(format_pattern({2, 0}) == "2,0");
  CHECK(parse_pattern("2,0") == Pattern{2, 0});
  CHECK(parse_pattern("13") == Pattern{13});
  CHECK_THROWS_AS(parse_pattern(""), StructuralError);
  CHECK_THROWS_AS(parse_pattern("2,"), StructuralError);
  CHECK_THROWS_AS(parse_pattern("2;0"), StructuralError);
  CHECK_THROWS_AS(parse_pattern("-1,0"), StructuralError);
}
