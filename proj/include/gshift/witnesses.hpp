#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gshift/configuration.hpp"
#include "gshift/map_spec.hpp"

namespace gshift {

// A witness construction whose precondition on the map fails; carries the
// profile flag that blocks it.
struct witness_inapplicable : std::runtime_error {
  std::string blocking_flag;
  witness_inapplicable(const std::string& msg, std::string flag)
      : std::runtime_error(msg), blocking_flag(std::move(flag)) {}
};

struct no_escaping_point : witness_inapplicable {
  explicit no_escaping_point(const std::string& msg) : witness_inapplicable(msg, "sensitive=false") {}
};

struct periodic_point_present : witness_inapplicable {
  explicit periodic_point_present(const std::string& msg)
      : witness_inapplicable(msg, "li_yorke_sensitive=false") {}
};

struct escaping_point_present : witness_inapplicable {
  explicit escaping_point_present(const std::string& msg)
      : witness_inapplicable(msg, "sensitive=true") {}
};

struct no_periodic_point : witness_inapplicable {
  explicit no_periodic_point(const std::string& msg)
      : witness_inapplicable(msg, "densely_chaotic=true") {}
};

// Least index whose orbit escapes. Throws no_escaping_point if none exists.
std::uint64_t least_escaping_point(const map_spec& phi);

// Pair built on the least escaping point theta: y differs from the all-zero
// x exactly at phi^m(theta) for m in the doubling blocks [2*4^j, 4^(j+1)).
// Block lengths and the gaps between them both grow geometrically, which
// drives the orbit-distance liminf toward zero while the blocks keep the
// limsup separated; checked empirically by the verification lab.
struct scrambled_candidate {
  configuration x;
  configuration y;
  std::uint64_t theta;
  std::string block_schedule;
};

scrambled_candidate make_scrambled_pair(const map_spec& phi, const alphabet& alpha);

// y agrees with the base point x on {1..prefix} and carries the scrambled
// difference schedule beyond it, so it lies within 2^-prefix of x while
// keeping the same limsup.
struct li_yorke_pair {
  configuration y;
  std::uint64_t prefix;
  std::uint64_t theta;
  distance_interval mu_estimate;  // windowed limsup estimate of the base pair
};

li_yorke_pair make_li_yorke_witness(const map_spec& phi, const alphabet& alpha,
                                    const configuration& x, std::uint64_t agree_prefix);

// z agrees with x on the caller's constrained coordinates and differs at
// phi^m(theta) for every m >= from_step, which forces
// orbit_distance(x, z, m, depth >= theta_index).lower >= 2^-theta_index.
struct sensitivity_witness {
  configuration z;
  std::uint64_t from_step;
  dyadic separation;  // 2^-theta_index
  std::uint64_t theta_index;
};

sensitivity_witness make_sensitivity_witness(const map_spec& phi, const alphabet& alpha,
                                             const configuration& x,
                                             const std::vector<std::uint64_t>& neighborhood_coords);

// Forward-invariant finite set lambda containing {1..depth}: any two points
// that agree on lambda stay within 2^-depth < epsilon at every time.
struct non_sensitivity_certificate {
  std::vector<std::uint64_t> lambda;
  dyadic epsilon;
  unsigned depth;
};

non_sensitivity_certificate make_non_sensitivity_certificate(const map_spec& phi,
                                                             const dyadic& epsilon);

// Boxes pinning the cycle of the least periodic index beta to two distinct
// symbols: every pair drawn from box_u x box_v keeps every orbit distance
// at least 2^-beta.
struct dense_chaos_refutation {
  std::uint64_t beta;
  std::uint64_t period;
  std::vector<std::uint64_t> cycle;
  int box_u_symbol;
  int box_v_symbol;
  dyadic separation;  // 2^-beta
};

dense_chaos_refutation make_dense_chaos_refutation(const map_spec& phi, const alphabet& alpha);

// The corner of a refutation box: `symbol` on the cycle over an all-`fill`
// background.
configuration box_corner(const dense_chaos_refutation& refutation, const alphabet& alpha,
                         int symbol, int fill_symbol);

}  // namespace gshift
