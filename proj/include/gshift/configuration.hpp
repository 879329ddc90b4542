#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gshift/dyadic.hpp"
#include "gshift/map_spec.hpp"

namespace gshift {

struct alphabet_too_small : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct alphabet_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Finite symbol set {0, ..., size-1}.
struct alphabet {
  int size;

  explicit alphabet(int s) : size(s) {
    if (s < 2) throw alphabet_too_small("alphabet needs at least two symbols");
  }

  friend bool operator==(const alphabet&, const alphabet&) = default;
};

// Default coordinate value: a single constant symbol or a repeating pattern
// indexed by (n-1) mod length.
class fill_rule {
 public:
  static fill_rule constant(int symbol) { return fill_rule{true, {symbol}}; }
  static fill_rule periodic(std::vector<int> pattern) {
    if (pattern.empty()) throw std::invalid_argument("fill: pattern must be nonempty");
    return fill_rule{false, std::move(pattern)};
  }

  bool is_constant() const { return constant_; }
  const std::vector<int>& pattern() const { return pattern_; }

  int at(const big_int& n) const {
    if (constant_) return pattern_[0];
    const auto r = static_cast<std::size_t>(static_cast<std::uint64_t>((n - 1) % pattern_.size()));
    return pattern_[r];
  }

  friend bool operator==(const fill_rule&, const fill_rule&) = default;

 private:
  fill_rule(bool constant, std::vector<int> pattern) : constant_(constant), pattern_(std::move(pattern)) {}
  bool constant_;
  std::vector<int> pattern_;
};

// Is step m inside the doubling block schedule [2*4^j, 4^(j+1))?
bool in_doubling_block(std::uint64_t m);

// The index set {phi^m(theta) : m in schedule}, where theta has an escaping
// orbit. Membership is decidable because the orbit is strictly increasing
// past the escape bound; the orbit values are cached and extended on demand.
class orbit_flip_set {
 public:
  // schedule: steps m >= from_step, restricted to the doubling blocks when
  // blocks_only is set; indices <= agree_prefix are excluded.
  orbit_flip_set(map_spec phi, std::uint64_t theta, std::uint64_t from_step, bool blocks_only,
                 std::uint64_t agree_prefix);

  bool contains(const big_int& index) const;
  // The schedule step m with phi^m(theta) = index, ignoring the schedule
  // filters (unique: escaping orbits never repeat).
  std::optional<std::uint64_t> orbit_step(const big_int& index) const;

  const map_spec& phi() const { return phi_; }
  std::uint64_t theta() const { return theta_; }
  std::uint64_t from_step() const { return from_step_; }
  bool blocks_only() const { return blocks_only_; }
  std::uint64_t agree_prefix() const { return agree_prefix_; }

  friend bool operator==(const orbit_flip_set& a, const orbit_flip_set& b) {
    return a.phi_ == b.phi_ && a.theta_ == b.theta_ && a.from_step_ == b.from_step_ &&
           a.blocks_only_ == b.blocks_only_ && a.agree_prefix_ == b.agree_prefix_;
  }

 private:
  map_spec phi_;
  std::uint64_t theta_;
  std::uint64_t from_step_;
  bool blocks_only_;
  std::uint64_t agree_prefix_;

  mutable std::mutex mutex_;
  mutable std::vector<big_int> orbit_;  // orbit_[m] = phi^m(theta)
  std::size_t ascent_begin_;            // first position past the escape bound
};

// A point of X^N: finite overrides over a fill rule, optionally composed with
// an orbit flip layer (coordinates in the flip set take the least symbol
// different from the base value) and explicit post-flip modifications.
class configuration {
 public:
  configuration(alphabet alpha, std::map<std::uint64_t, int> overrides, fill_rule fill);

  int coordinate(const big_int& n) const;

  const alphabet& alpha() const { return alpha_; }
  const std::map<std::uint64_t, int>& overrides() const { return overrides_; }
  const fill_rule& fill() const { return fill_; }
  const std::shared_ptr<const orbit_flip_set>& flips() const { return flips_; }
  const std::map<std::uint64_t, int>& modifications() const { return modifications_; }

  configuration with_flip_layer(map_spec phi, std::uint64_t theta, std::uint64_t from_step,
                                bool blocks_only, std::uint64_t agree_prefix) const;
  // Pins coordinate n to `symbol`, taking precedence over the flip layer.
  configuration with_coordinate(std::uint64_t n, int symbol) const;

  friend bool operator==(const configuration& a, const configuration& b);

 private:
  alphabet alpha_;
  std::map<std::uint64_t, int> overrides_;
  fill_rule fill_;
  std::shared_ptr<const orbit_flip_set> flips_;
  std::map<std::uint64_t, int> modifications_;

  void check_symbol(int symbol) const;
};

configuration all_constant(const alphabet& alpha, int symbol);

// Finite permutation of {1..k} extended by the identity; beta_i = at(i).
class enumeration {
 public:
  enumeration() = default;
  explicit enumeration(std::vector<std::uint64_t> images);

  std::uint64_t at(std::uint64_t i) const;
  std::uint64_t position_of(std::uint64_t index) const;
  bool is_identity() const { return images_.empty(); }

 private:
  std::vector<std::uint64_t> images_;
  std::vector<std::uint64_t> inverse_;
};

// Certified bounds on the product metric: the true distance lies in
// [lower, upper], with upper - lower <= 2^-depth.
struct distance_interval {
  dyadic lower;
  dyadic upper;
  unsigned depth = 0;

  bool exact() const { return lower == upper; }

  friend bool operator==(const distance_interval&, const distance_interval&) = default;
};

inline constexpr unsigned max_metric_depth = 60;

distance_interval distance(const configuration& x, const configuration& y, unsigned depth,
                           const enumeration& order = {});

int shifted_coordinate(const map_spec& phi, const configuration& x, const big_int& n,
                       std::uint64_t t);

distance_interval orbit_distance(const map_spec& phi, const configuration& x,
                                 const configuration& y, std::uint64_t t, unsigned depth,
                                 const enumeration& order = {});

}  // namespace gshift
