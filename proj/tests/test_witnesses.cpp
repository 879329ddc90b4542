#include <random>

#include "doctest.h"

#include "gshift/dynamics_lab.hpp"
#include "gshift/witnesses.hpp"
#include "test_helpers.hpp"

using namespace gshift;
using namespace gshift::testing;

namespace {
const alphabet binary(2);
}

TEST_CASE("least escaping point") {
  CHECK(least_escaping_point(phi1()) == 1);
  CHECK(least_escaping_point(phi2()) == 1);
  CHECK(least_escaping_point(phi3()) == 3);  // 1 and 2 fall into the fixed point
  CHECK_THROWS_AS(least_escaping_point(phi4()), no_escaping_point);
}

TEST_CASE("scrambled pair candidate") {
  SUBCASE("doubling map") {
    const scrambled_candidate c = make_scrambled_pair(phi1(), binary);
    CHECK(c.theta == 1);
    CHECK(c.x.coordinate(4) == 0);
    CHECK(c.y.coordinate(4) == 1);    // step 2 in a block
    CHECK(c.y.coordinate(16) == 0);   // step 4 in a gap
  }
  SUBCASE("merged doubling map") {
    const scrambled_candidate c = make_scrambled_pair(phi2(), binary);
    CHECK(c.theta == 1);
    CHECK(c.y.coordinate(6) == 1);    // orbit 1,3,6,...: step 2 in a block
    CHECK(c.y.coordinate(3) == 0);    // step 1 before the blocks
  }
  SUBCASE("inapplicable without an escaping orbit") {
    CHECK_THROWS_AS(make_scrambled_pair(phi4(), binary), no_escaping_point);
  }
}

TEST_CASE("li-yorke witness") {
  const configuration x = all_constant(binary, 0);
  SUBCASE("agrees on the prefix, differs beyond it") {
    const li_yorke_pair w = make_li_yorke_witness(phi2(), binary, x, 3);
    for (std::uint64_t n = 1; n <= 3; ++n) {
      CHECK(w.y.coordinate(n) == x.coordinate(n));
    }
    CHECK(w.y.coordinate(6) == 1);   // first scheduled difference above the prefix
    CHECK(w.theta == 1);
    CHECK(w.mu_estimate.lower > dyadic(0));
  }
  SUBCASE("blocked by a periodic point") {
    CHECK_THROWS_AS(make_li_yorke_witness(phi3(), binary, x, 3), periodic_point_present);
  }
  SUBCASE("requires a constant fill") {
    const configuration striped(binary, {}, fill_rule::periodic({0, 1}));
    CHECK_THROWS_AS(make_li_yorke_witness(phi2(), binary, striped, 3), std::invalid_argument);
  }
  SUBCASE("witness distance shrinks with the prefix") {
    dyadic previous(1);
    for (std::uint64_t prefix : {1, 2, 4, 8, 12}) {
      const li_yorke_pair w = make_li_yorke_witness(phi2(), binary, x, prefix);
      const distance_interval d = distance(x, w.y, 16);
      CHECK(d.upper <= dyadic::pow2(-static_cast<int>(prefix)));
      CHECK(d.lower <= previous);
      previous = d.lower;
    }
  }
}

TEST_CASE("sensitivity witness") {
  const configuration x = all_constant(binary, 0);
  SUBCASE("exact separation floor, fixed point feeding doubling") {
    const sensitivity_witness w = make_sensitivity_witness(phi3(), binary, x, {1, 2, 3});
    CHECK(w.theta_index == 3);
    CHECK(w.separation == dyadic::pow2(-3));
    CHECK(w.from_step == 1);  // theta itself sits inside the pinned set
    for (std::uint64_t n : {1, 2, 3}) {
      CHECK(w.z.coordinate(n) == x.coordinate(n));  // stays inside the pinned box
    }
    for (std::uint64_t m = w.from_step; m <= 200; ++m) {
      CHECK(orbit_distance(phi3(), x, w.z, m, 8).lower >= w.separation);
    }
  }
  SUBCASE("empty pinned set starts immediately") {
    const sensitivity_witness w = make_sensitivity_witness(phi1(), binary, x, {});
    CHECK(w.from_step == 0);
    CHECK(w.theta_index == 1);
    CHECK(orbit_distance(phi1(), x, w.z, 0, 4).lower >= dyadic::pow2(-1));
  }
  SUBCASE("inapplicable without an escaping orbit") {
    CHECK_THROWS_AS(make_sensitivity_witness(phi4(), binary, x, {}), no_escaping_point);
  }
}

TEST_CASE("non-sensitivity certificate") {
  SUBCASE("countdown map at epsilon 1/8") {
    const non_sensitivity_certificate c = make_non_sensitivity_certificate(phi4(), dyadic::pow2(-3));
    CHECK(c.depth == 4);
    CHECK(c.lambda == std::vector<std::uint64_t>{1, 2, 3, 4});
  }
  SUBCASE("identity at epsilon 1/2") {
    const non_sensitivity_certificate c =
        make_non_sensitivity_certificate(identity_map(), dyadic::pow2(-1));
    CHECK(c.depth == 2);
    CHECK(c.lambda == std::vector<std::uint64_t>{1, 2});
  }
  SUBCASE("closure is forward invariant") {
    const map_spec hop(4, {{1, 7}, {3, 9}}, {1, -1});
    const non_sensitivity_certificate c = make_non_sensitivity_certificate(hop, dyadic::pow2(-3));
    const std::set<std::uint64_t> lambda(c.lambda.begin(), c.lambda.end());
    for (auto v : lambda) {
      CHECK(lambda.count(static_cast<std::uint64_t>(hop.apply(big_int(v)))));
    }
  }
  SUBCASE("pinned pairs never separate") {
    const non_sensitivity_certificate c = make_non_sensitivity_certificate(phi4(), dyadic::pow2(-3));
    const configuration x = all_constant(binary, 0);
    std::mt19937_64 rng(5);
    for (int round = 0; round < 25; ++round) {
      std::map<std::uint64_t, int> table;
      for (std::uint64_t n = 1; n <= 12; ++n) {
        const bool pinned = std::count(c.lambda.begin(), c.lambda.end(), n) > 0;
        table[n] = pinned ? x.coordinate(big_int(n)) : static_cast<int>(rng() % 2);
      }
      const configuration y(binary, std::move(table),
                            fill_rule::constant(static_cast<int>(rng() % 2)));
      for (std::uint64_t t = 0; t <= 200; ++t) {
        CHECK(orbit_distance(phi4(), x, y, t, c.depth).upper < c.epsilon);
      }
    }
  }
  SUBCASE("inapplicable with an escaping orbit") {
    CHECK_THROWS_AS(make_non_sensitivity_certificate(phi1(), dyadic::pow2(-3)),
                    escaping_point_present);
  }
  SUBCASE("epsilon must be positive") {
    CHECK_THROWS_AS(make_non_sensitivity_certificate(phi4(), dyadic(0)), std::invalid_argument);
  }
}

TEST_CASE("dense chaos refutation") {
  SUBCASE("fixed point 2") {
    const dense_chaos_refutation r = make_dense_chaos_refutation(phi3(), binary);
    CHECK(r.beta == 2);
    CHECK(r.period == 1);
    CHECK(r.cycle == std::vector<std::uint64_t>{2});
    CHECK(r.separation == dyadic::pow2(-2));
  }
  SUBCASE("fixed point 1 recovers the half bound") {
    const dense_chaos_refutation r = make_dense_chaos_refutation(phi4(), binary);
    CHECK(r.beta == 1);
    CHECK(r.separation == dyadic::pow2(-1));
  }
  SUBCASE("longer cycle") {
    // 1 -> 2 -> 3 -> 1, with 1 -> 2 supplied by the tail itself
    const map_spec rotor(3, {{2, 3}, {3, 1}}, {2, 0});
    const dense_chaos_refutation r = make_dense_chaos_refutation(rotor, binary);
    CHECK(r.beta == 1);
    CHECK(r.period == 3);
    CHECK(r.cycle == std::vector<std::uint64_t>{1, 2, 3});
  }
  SUBCASE("box pairs keep the floor at every step") {
    const dense_chaos_refutation r = make_dense_chaos_refutation(phi3(), binary);
    std::mt19937_64 rng(17);
    for (int round = 0; round < 25; ++round) {
      configuration u = box_corner(r, binary, r.box_u_symbol, static_cast<int>(rng() % 2));
      configuration v = box_corner(r, binary, r.box_v_symbol, static_cast<int>(rng() % 2));
      for (std::uint64_t n = 1; n <= 8; ++n) {
        if (n == r.beta) continue;
        u = u.with_coordinate(n, static_cast<int>(rng() % 2));
        v = v.with_coordinate(n, static_cast<int>(rng() % 2));
      }
      for (std::uint64_t t = 0; t <= 200; ++t) {
        CHECK(orbit_distance(phi3(), u, v, t, 8).lower >= r.separation);
      }
    }
  }
  SUBCASE("inapplicable without periodic points") {
    CHECK_THROWS_AS(make_dense_chaos_refutation(phi1(), binary), no_periodic_point);
  }
}
