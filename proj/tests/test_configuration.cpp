#include <future>
#include <random>
#include <vector>

#include "doctest.h"

#include "gshift/configuration.hpp"
#include "test_helpers.hpp"

using namespace gshift;
using namespace gshift::testing;

namespace {
const alphabet binary(2);
const alphabet five(5);
}  // namespace

TEST_CASE("alphabet needs two symbols") {
  CHECK_THROWS_AS(alphabet(1), alphabet_too_small);
  CHECK_NOTHROW(alphabet(2));
}

TEST_CASE("coordinate lookup") {
  const configuration c(binary, {{3, 1}}, fill_rule::constant(0));
  CHECK(c.coordinate(3) == 1);
  CHECK(c.coordinate(4) == 0);
  CHECK(c.coordinate(big_int(1000000000)) == 0);

  const configuration p(binary, {}, fill_rule::periodic({0, 1}));
  CHECK(p.coordinate(4) == 1);
  CHECK(p.coordinate(1) == 0);
  CHECK(p.coordinate((big_int(1) << 80) + 1) == 0);  // odd index, pattern position 0

  CHECK_THROWS_AS(configuration(binary, {{1, 2}}, fill_rule::constant(0)), std::invalid_argument);
  CHECK_THROWS_AS(configuration(binary, {}, fill_rule::constant(2)), std::invalid_argument);
  CHECK_THROWS_AS(c.coordinate(0), std::invalid_argument);
}

TEST_CASE("doubling block schedule") {
  CHECK(!in_doubling_block(0));
  CHECK(!in_doubling_block(1));
  CHECK(in_doubling_block(2));
  CHECK(in_doubling_block(3));
  CHECK(!in_doubling_block(4));
  CHECK(!in_doubling_block(7));
  CHECK(in_doubling_block(8));
  CHECK(in_doubling_block(15));
  CHECK(!in_doubling_block(16));
  CHECK(!in_doubling_block(31));
  CHECK(in_doubling_block(32));
  CHECK(in_doubling_block(63));
  CHECK(!in_doubling_block(64));
  CHECK(!in_doubling_block(127));
  CHECK(in_doubling_block(128));
  CHECK(in_doubling_block(255));
  CHECK(!in_doubling_block(256));
}

TEST_CASE("orbit flip layer marks scheduled orbit values") {
  // under doubling from 1: value 2^m at step m
  const configuration x = all_constant(binary, 0);
  const configuration y = x.with_flip_layer(phi1(), 1, 0, /*blocks_only=*/true, 0);
  CHECK(y.coordinate(4) == 1);     // m = 2, in [2, 4)
  CHECK(y.coordinate(8) == 1);     // m = 3
  CHECK(y.coordinate(16) == 0);    // m = 4, gap
  CHECK(y.coordinate(128) == 0);   // m = 7, gap
  CHECK(y.coordinate(256) == 1);   // m = 8, block
  CHECK(y.coordinate(3) == 0);     // off the orbit
  CHECK(y.coordinate(big_int(1) << 40) == 1);  // m = 40, block [32, 64)
  CHECK(y.coordinate(big_int(1) << 70) == 0);  // m = 70, gap [64, 128)
}

TEST_CASE("flip layer respects from_step and the agreement prefix") {
  const configuration x = all_constant(binary, 0);
  const configuration z = x.with_flip_layer(phi1(), 1, 3, /*blocks_only=*/false, 0);
  CHECK(z.coordinate(1) == 0);
  CHECK(z.coordinate(4) == 0);   // step 2 < from_step
  CHECK(z.coordinate(8) == 1);   // step 3
  CHECK(z.coordinate(16) == 1);  // step 4

  const configuration w = x.with_flip_layer(phi2(), 1, 0, /*blocks_only=*/true, 8);
  // orbit of 1 under phi2: 1, 3, 6, 12, ...; blocks start at step 2
  CHECK(w.coordinate(6) == 0);   // value 6 <= agree_prefix 8
  CHECK(w.coordinate(12) == 1);  // step 3, block, above the prefix

  CHECK_THROWS_AS(z.with_flip_layer(phi1(), 1, 0, false, 0), std::logic_error);
  CHECK_THROWS_AS(x.with_flip_layer(phi4(), 1, 0, false, 0), std::invalid_argument);
}

TEST_CASE("modifications take precedence over flips") {
  const configuration x = all_constant(binary, 0);
  const configuration z = x.with_flip_layer(phi1(), 1, 0, false, 0).with_coordinate(4, 0);
  CHECK(z.coordinate(4) == 0);
  CHECK(z.coordinate(2) == 1);
}

TEST_CASE("flip picks the least symbol different from the base") {
  configuration x(five, {{8, 3}}, fill_rule::constant(4));
  const configuration z = x.with_flip_layer(phi1(), 1, 0, false, 0);
  CHECK(z.coordinate(8) == 0);   // base 3 -> 0
  CHECK(z.coordinate(2) == 0);   // base 4 -> 0
  const configuration zero_base = all_constant(five, 0).with_flip_layer(phi1(), 1, 0, false, 0);
  CHECK(zero_base.coordinate(2) == 1);  // base 0 -> 1
}

TEST_CASE("shifted coordinates evaluate pointwise") {
  const configuration x(binary, {{2, 1}}, fill_rule::constant(0));
  CHECK(shifted_coordinate(phi1(), x, 1, 1) == 1);  // looks up index phi(1) = 2
  CHECK(shifted_coordinate(phi1(), x, 1, 0) == x.coordinate(1));
  const configuration y(binary, {{1, 1}}, fill_rule::constant(0));
  CHECK(shifted_coordinate(phi4(), y, 5, 10) == 1);  // phi4^10(5) = 1
}

TEST_CASE("shifted coordinates agree with materialized shifts") {
  // materialize sigma^s(x) on the indices the checks touch, then compare
  for (const auto& phi : {phi1(), phi2(), phi4()}) {
    const configuration x(binary, {{2, 1}, {5, 1}, {9, 1}}, fill_rule::constant(0));
    for (std::uint64_t s : {1, 2, 5}) {
      std::map<std::uint64_t, int> table;
      for (std::uint64_t n = 1; n <= 12; ++n) {
        for (std::uint64_t t = 0; t <= 12; ++t) {
          const big_int index = iterate(phi, big_int(n), t);
          if (index <= big_int(1) << 40) {
            table[static_cast<std::uint64_t>(index)] =
                x.coordinate(iterate(phi, index, s));
          }
        }
      }
      const configuration materialized(binary, std::move(table), fill_rule::constant(0));
      for (std::uint64_t n = 1; n <= 12; ++n) {
        for (std::uint64_t t = 0; t + s <= 12; ++t) {
          CHECK(shifted_coordinate(phi, x, big_int(n), s + t) ==
                shifted_coordinate(phi, materialized, big_int(n), t));
        }
      }
    }
  }
}

TEST_CASE("distance basics") {
  const configuration x = all_constant(binary, 0);
  SUBCASE("identical points") {
    const auto d = distance(x, x, 8);
    CHECK(d.lower == dyadic(0));
    CHECK(d.upper == dyadic(0));
    CHECK(d.exact());
  }
  SUBCASE("single differing coordinate") {
    const configuration y(binary, {{1, 1}}, fill_rule::constant(0));
    const auto d = distance(x, y, 8);
    CHECK(d.lower == dyadic::pow2(-1));
    CHECK(d.upper == dyadic::pow2(-1));
    CHECK(d.exact());
  }
  SUBCASE("all coordinates differ") {
    const configuration ones = all_constant(binary, 1);
    const auto d = distance(x, ones, 8);
    CHECK(d.lower == dyadic(1) - dyadic::pow2(-8));
    CHECK(d.upper == dyadic(1));
    CHECK(!d.exact());
  }
  SUBCASE("alphabet mismatch") {
    CHECK_THROWS_AS(distance(x, all_constant(five, 0), 8), alphabet_mismatch);
  }
  SUBCASE("depth bounds") {
    CHECK_THROWS_AS(distance(x, x, 0), std::invalid_argument);
    CHECK_THROWS_AS(distance(x, x, 61), std::invalid_argument);
  }
}

TEST_CASE("distance stays inexact when overrides reach past the depth") {
  const configuration x = all_constant(binary, 0);
  const configuration y(binary, {{40, 1}}, fill_rule::constant(0));
  const auto d = distance(x, y, 8);
  CHECK(d.lower == dyadic(0));
  CHECK(d.upper == dyadic::pow2(-8));
}

TEST_CASE("orbit distance") {
  const configuration x = all_constant(binary, 0);
  SUBCASE("t = 0 matches distance") {
    const configuration y(binary, {{1, 1}}, fill_rule::constant(0));
    CHECK(orbit_distance(phi1(), x, y, 0, 8) == distance(x, y, 8));
  }
  SUBCASE("pinned fixed point keeps every step separated") {
    // under phi4 the index 1 is fixed, so differing there never washes out
    const configuration y(binary, {{1, 1}}, fill_rule::constant(0));
    for (std::uint64_t t = 0; t <= 50; ++t) {
      CHECK(orbit_distance(phi4(), x, y, t, 8).lower >= dyadic::pow2(-1));
    }
  }
  SUBCASE("identical points exact at every step") {
    CHECK(orbit_distance(phi2(), x, x, 17, 8).exact());
  }
}

TEST_CASE("distance symmetry, triangle, refinement") {
  std::mt19937_64 rng(7);
  auto random_config = [&]() {
    std::map<std::uint64_t, int> table;
    for (std::uint64_t n = 1; n <= 12; ++n) {
      if (rng() % 2) table[n] = static_cast<int>(rng() % 2);
    }
    return configuration(binary, std::move(table),
                         rng() % 2 ? fill_rule::constant(static_cast<int>(rng() % 2))
                                   : fill_rule::periodic({static_cast<int>(rng() % 2),
                                                          static_cast<int>(rng() % 2)}));
  };
  for (int round = 0; round < 50; ++round) {
    const configuration a = random_config();
    const configuration b = random_config();
    const configuration c = random_config();
    const auto dab = distance(a, b, 10);
    CHECK(dab.lower == distance(b, a, 10).lower);
    CHECK(dab.upper == distance(b, a, 10).upper);
    // triangle inequality on certified bounds
    CHECK(distance(a, c, 10).lower <= distance(a, b, 10).upper + distance(b, c, 10).upper);
    // deeper truncation only narrows the interval
    const auto d6 = distance(a, b, 6);
    const auto d12 = distance(a, b, 12);
    CHECK(d6.lower <= d12.lower);
    CHECK(d12.upper <= d6.upper);
  }
}

TEST_CASE("permuted enumerations") {
  const enumeration swap_two(std::vector<std::uint64_t>{2, 1});
  CHECK(swap_two.at(1) == 2);
  CHECK(swap_two.at(2) == 1);
  CHECK(swap_two.at(9) == 9);
  CHECK(swap_two.position_of(1) == 2);
  CHECK(swap_two.position_of(9) == 9);
  CHECK_THROWS_AS(enumeration(std::vector<std::uint64_t>{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(enumeration(std::vector<std::uint64_t>{3, 1}), std::invalid_argument);

  const configuration x = all_constant(binary, 0);
  const configuration y(binary, {{1, 1}}, fill_rule::constant(0));
  // the differing coordinate moves from position 1 to position 2
  CHECK(distance(x, y, 8, swap_two).lower == dyadic::pow2(-2));
  CHECK(distance(x, y, 8, swap_two).upper == dyadic::pow2(-2));
}

TEST_CASE("flip lookups are safe from concurrent threads") {
  std::vector<int> expected;
  {
    const configuration reference = all_constant(binary, 0).with_flip_layer(phi1(), 1, 0, true, 0);
    for (std::uint64_t m = 0; m <= 40; ++m) {
      expected.push_back(reference.coordinate(big_int(1) << m));
    }
  }
  // fresh instance: the workers race to extend its shared orbit cache
  const configuration y = all_constant(binary, 0).with_flip_layer(phi1(), 1, 0, true, 0);
  std::vector<std::future<std::vector<int>>> workers;
  for (int w = 0; w < 4; ++w) {
    workers.push_back(std::async(std::launch::async, [&y]() {
      std::vector<int> seen;
      for (std::uint64_t m = 0; m <= 40; ++m) {
        seen.push_back(y.coordinate(big_int(1) << m));
      }
      return seen;
    }));
  }
  for (auto& worker : workers) CHECK(worker.get() == expected);
}

TEST_CASE("series intervals contain the exactly computable distance") {
  std::mt19937_64 rng(11);
  for (const auto& phi : {phi1(), phi2(), phi3()}) {
    for (int round = 0; round < 10; ++round) {
      std::map<std::uint64_t, int> ta, tb;
      for (std::uint64_t n = 1; n <= 20; ++n) {
        if (rng() % 2) ta[n] = static_cast<int>(rng() % 2);
        if (rng() % 2) tb[n] = static_cast<int>(rng() % 2);
      }
      const configuration a(binary, std::move(ta), fill_rule::constant(static_cast<int>(rng() % 2)));
      const configuration b(binary, std::move(tb), fill_rule::constant(static_cast<int>(rng() % 2)));
      for (std::uint64_t t : {0, 1, 3, 9, 25}) {
        const dyadic exact = oracle_exact_orbit_distance(phi, a, b, t);
        const auto interval = orbit_distance(phi, a, b, t, 12);
        CHECK(interval.lower <= exact);
        CHECK(exact <= interval.upper);
      }
    }
  }
}
