#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gshift/classifier.hpp"
#include "gshift/configuration.hpp"
#include "gshift/map_spec.hpp"
#include "gshift/witnesses.hpp"

namespace gshift {

struct empty_window : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Orbit-distance intervals at a common depth for t = 0..horizon.
struct distance_series {
  std::vector<distance_interval> entries;  // entries[t]
  unsigned depth = 0;
  std::uint64_t horizon = 0;
};

distance_series make_distance_series(const map_spec& phi, const configuration& x,
                                     const configuration& y, std::uint64_t horizon, unsigned depth,
                                     const enumeration& order = {});

// One-sided tail-window certificates: the true liminf is <= liminf_upper and
// the true limsup is >= limsup_lower (both over the window [start, horizon]).
struct window_estimates {
  dyadic liminf_upper;  // min over the window of interval uppers
  dyadic limsup_lower;  // max over the window of interval lowers
};

window_estimates estimate_liminf_limsup(const distance_series& series, std::uint64_t window_start);

enum class scramble_verdict { likely_scrambled, likely_not_scrambled, inconclusive };

std::string to_string(scramble_verdict v);

struct scrambled_verdict_result {
  window_estimates estimates;
  dyadic window_min_lower;  // min over the window of interval lowers
  dyadic window_max_upper;  // max over the window of interval uppers
  std::uint64_t window_start = 0;
  dyadic tolerance;   // liminf evidence threshold
  dyadic separation;  // limsup evidence threshold
  scramble_verdict verdict = scramble_verdict::inconclusive;
};

scrambled_verdict_result classify_scrambled(const map_spec& phi, const configuration& x,
                                            const configuration& y, std::uint64_t horizon,
                                            unsigned depth, std::uint64_t window_start,
                                            const dyadic& tolerance, const dyadic& separation,
                                            const enumeration& order = {});

// Witness-probed underapproximation of the times at which the neighborhood
// pinned on `neighborhood_coords` contains an epsilon-separated pair. Empty
// when no orbit escapes (the certificate keeps every pair below epsilon).
struct occurrence_set {
  dyadic epsilon;
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> times;
  std::uint64_t gap_max = 0;  // largest difference between consecutive times
  double density = 0.0;       // |times| / (horizon + 1)
};

occurrence_set probe_occurrence_set(const map_spec& phi, const alphabet& alpha,
                                    const configuration& x,
                                    const std::vector<std::uint64_t>& neighborhood_coords,
                                    const dyadic& epsilon, std::uint64_t horizon, unsigned depth);

struct budget {
  std::uint64_t horizon = 256;
  unsigned depth = 16;
  std::uint64_t window = 64;
  unsigned samples = 50;
  std::uint64_t seed = 0;
};

struct claim_result {
  enum class status { pass, fail, inconclusive };
  std::string name;
  status outcome = status::inconclusive;
  std::string details;
};

std::string to_string(claim_result::status s);

struct verification_report {
  std::vector<claim_result> claims;

  bool all_passed() const;
  bool any_failed() const;
  bool any_inconclusive() const;
};

// Runs every witness or refutation applicable to the given profile and
// checks each empirical outcome against the profile's flags.
verification_report verify_against(const map_spec& phi, const alphabet& alpha,
                                   const chaos_profile& profile, const budget& b);

verification_report verify_profile(const map_spec& phi, const alphabet& alpha, const budget& b);

}  // namespace gshift
