#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "fockopt/linear_optics.hpp"
#include "support/dense_fock.hpp"
#include "support/random_states.hpp"

using namespace fockopt;

namespace {

StateVector eq3_ancilla(double theta) {
  const double s2 = std::sin(2.0 * theta) / std::sqrt(2.0);
  return make_state(2, {{{2, 0}, s2}, {{1, 1}, std::cos(2.0 * theta)}, {{0, 2}, -s2}});
}

// (spectator label, pair photon number) sectors present in a state.
std::set<std::pair<std::vector<int>, int>> pair_sectors(const StateVector& s, std::size_t a,
                                                        std::size_t b) {
  std::set<std::pair<std::vector<int>, int>> out;
  for (const auto& [ket, amp] : s) {
    auto occ = ket.occupations();
    const int total = occ[a] + occ[b];
    occ[a] = occ[b] = 0;
    out.emplace(occ, total);
  }
  return out;
}

}  // namespace

TEST_CASE("beam splitter reproduces the ancilla preparation sign-exactly") {
  for (double theta : {0.5 * std::asin(2.0 / std::sqrt(5.0)), 0.1, 0.7, -1.3, 2.9}) {
    const auto out = apply_beam_splitter(make_state(2, {{{1, 1}, 1.0}}), {0, 1, theta});
    CHECK(max_abs_difference(out, eq3_ancilla(theta)) <= 1e-12);
  }
}

TEST_CASE("beam splitter basics") {
  std::mt19937_64 rng(11);
  const auto s = testing::random_state(rng, 3, 5, 8);
  CHECK(max_abs_difference(apply_beam_splitter(s, {0, 2, 0.0}), s) == 0.0);

  SUBCASE("one photon: |1,0> -> cosθ|1,0> - sinθ|0,1>") {
    testing::DenseFockSpace space(2, 1);
    for (double theta : {0.2, 1.1, -0.8}) {
      const auto in = make_state(2, {{{1, 0}, 1.0}});
      const auto expected = make_state(2, {{{1, 0}, std::cos(theta)}, {{0, 1}, -std::sin(theta)}});
      const auto dense = space.from_dense(space.beam_splitter(0, 1, theta) * space.to_dense(in));
      CHECK(max_abs_difference(dense, expected) <= 1e-13);
      CHECK(max_abs_difference(apply_beam_splitter(in, {0, 1, theta}), expected) <= 1e-15);
      CHECK(max_abs_difference(oracle_apply_beam_splitter(in, {0, 1, theta}), expected) <= 1e-14);
    }
  }

  SUBCASE("reflectance and transmittance") {
    const BeamSplitter bs{0, 1, 0.4};
    CHECK(bs.reflectance() == std::sin(0.4));
    CHECK(bs.transmittance() == std::cos(0.4));
    CHECK(std::abs(bs.reflectance() * bs.reflectance() + bs.transmittance() * bs.transmittance() -
                   1.0) <= 1e-15);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(apply_beam_splitter(s, {0, 3, 0.1}), StructuralError);
    CHECK_THROWS_AS(apply_beam_splitter(s, {1, 1, 0.1}), StructuralError);
    CHECK_THROWS_AS(apply_beam_splitter(make_state(2, {{{11, 10}, 1.0}}), {0, 1, 0.1}),
                    CapacityError);
    CHECK_NOTHROW(apply_beam_splitter(make_state(2, {{{10, 10}, 1.0}}), {0, 1, 0.1}));
  }
}

TEST_CASE("phase shifter") {
  const Complex alpha{0.5, 0.1}, beta{-0.3, 0.4}, gamma{0.2, 0.6};
  SUBCASE("π on the (0,2) residual restores the sign of |1>") {
    const auto raw = make_state(1, {{{0}, alpha}, {{1}, -beta}, {{2}, -gamma}});
    const auto fixed = apply_phase_shifter(raw, {0, std::numbers::pi});
    const auto expected = make_state(1, {{{0}, alpha}, {{1}, beta}, {{2}, -gamma}});
    CHECK(max_abs_difference(fixed, expected) == 0.0);
  }
  SUBCASE("zero phase is the identity") {
    const auto s = make_state(2, {{{0, 1}, alpha}, {{3, 2}, beta}});
    CHECK(max_abs_difference(apply_phase_shifter(s, {1, 0.0}), s) == 0.0);
  }
  SUBCASE("π/2 on |2> gives -|2>") {
    const auto out = apply_phase_shifter(make_state(1, {{{2}, 1.0}}), {0, std::numbers::pi / 2});
    CHECK(out.amplitude({2}) == Complex(-1.0, 0.0));
  }
  SUBCASE("generic phase matches exp(i·phi·n)") {
    const auto s = make_state(2, {{{0, 3}, 1.0}});
    CHECK(std::abs(apply_phase_shifter(s, {1, 0.3}).amplitude({0, 3}) - std::polar(1.0, 0.9)) <=
          1e-15);
  }
  CHECK_THROWS_AS(apply_phase_shifter(StateVector::vacuum(1), {1, 0.1}), StructuralError);
}

TEST_CASE("generator-exponential oracle") {
  SUBCASE("reproduces the ancilla preparation") {
    const double theta = 0.5 * std::asin(2.0 / std::sqrt(5.0));
    const auto out = oracle_apply_beam_splitter(make_state(2, {{{1, 1}, 1.0}}), {0, 1, theta});
    CHECK(max_abs_difference(out, eq3_ancilla(theta)) <= 1e-10);
  }
  SUBCASE("zero angle") {
    std::mt19937_64 rng(3);
    const auto s = testing::random_state(rng, 3, 6, 10);
    CHECK(max_abs_difference(oracle_apply_beam_splitter(s, {2, 0, 0.0}), s) <= 1e-12);
  }
  SUBCASE("agrees with the binomial expansion on random states") {
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto s = testing::random_state(rng, 3, 6, 12);
      std::uniform_int_distribution<std::size_t> mode(0, 2);
      const std::size_t a = mode(rng);
      std::size_t b = mode(rng);
      while (b == a) b = mode(rng);
      const BeamSplitter bs{a, b, testing::random_angle(rng)};
      worst = std::max(worst, max_abs_difference(apply_beam_splitter(s, bs),
                                                 oracle_apply_beam_splitter(s, bs)));
    }
    CHECK(worst < 1e-10);
  }
  SUBCASE("sector cap") {
    CHECK_THROWS_AS(oracle_apply_beam_splitter(make_state(2, {{{5, 4}, 1.0}}), {0, 1, 0.1}),
                    CapacityError);
    CHECK_NOTHROW(oracle_apply_beam_splitter(make_state(2, {{{5, 4}, 1.0}}), {0, 1, 0.1}, 9));
  }
}

TEST_CASE("dense ladder-operator reference agrees with the expansion") {
  std::mt19937_64 rng(5);
  testing::DenseFockSpace space(3, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = testing::random_state(rng, 3, 5, 8);
    const BeamSplitter bs{1, 0, testing::random_angle(rng)};
    const auto dense =
        space.from_dense(space.beam_splitter(bs.mode_a, bs.mode_b, bs.theta) * space.to_dense(s));
    CHECK(max_abs_difference(apply_beam_splitter(s, bs), dense) <= 1e-12);
  }
}

TEST_CASE("linear-optics invariants") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_state(rng, 4, 6, 10);
    const double t1 = testing::random_angle(rng);
    const double t2 = testing::random_angle(rng);
    const BeamSplitter bs{3, 1, t1};

    const auto out = apply_beam_splitter(s, bs);
    CHECK(std::abs(norm_squared(out) - norm_squared(s)) <= 1e-12);
    CHECK(pair_sectors(out, 3, 1) == pair_sectors(s, 3, 1));

    CHECK(max_abs_difference(apply_beam_splitter(out, {3, 1, -t1}), s) <= 1e-12);
    CHECK(max_abs_difference(apply_beam_splitter(out, {3, 1, t2}),
                             apply_beam_splitter(s, {3, 1, t1 + t2})) <= 1e-12);

    const auto shifted = apply_phase_shifter(s, {2, t2});
    CHECK(std::abs(norm_squared(shifted) - norm_squared(s)) <= 1e-12);
    CHECK(shifted.size() == s.size());

    const auto flipped = apply_phase_shifter(s, {0, std::numbers::pi});
    for (const auto& [ket, amp] : s) {
      CHECK(flipped.amplitude(ket) == (ket[0] % 2 ? -amp : amp));
    }
  }
}

TEST_CASE("exact trig helpers") {
  const auto [c, s] = cos_sin(std::numbers::pi / 4);
  CHECK(c == s);
  CHECK(cos_sin(0.0) == std::pair{1.0, 0.0});
  CHECK(cos_sin(-std::numbers::pi / 2) == std::pair{0.0, -1.0});
  CHECK(unit_phase(std::numbers::pi) == Complex(-1.0, 0.0));
  CHECK(unit_phase(3 * std::numbers::pi) == Complex(-1.0, 0.0));
  CHECK(unit_phase(-std::numbers::pi / 2) == Complex(0.0, -1.0));
  CHECK(std::abs(unit_phase(0.4) - std::polar(1.0, 0.4)) == 0.0);
}
