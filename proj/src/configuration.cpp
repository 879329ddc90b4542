#include "gshift/configuration.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace gshift {

namespace {
constexpr std::uint64_t u64_max = std::numeric_limits<std::uint64_t>::max();
}

bool in_doubling_block(std::uint64_t m) {
  if (m < 2) return false;
  std::uint64_t p = 1;  // largest power of 4 with p <= m
  while (p <= m / 4) p *= 4;
  return m >= 2 * p;
}

orbit_flip_set::orbit_flip_set(map_spec phi, std::uint64_t theta, std::uint64_t from_step,
                               bool blocks_only, std::uint64_t agree_prefix)
    : phi_(std::move(phi)),
      theta_(theta),
      from_step_(from_step),
      blocks_only_(blocks_only),
      agree_prefix_(agree_prefix) {
  const auto bound = phi_.escape_bound();
  if (!bound || !classify_point(phi_, big_int(theta_)).is_escaping()) {
    throw std::invalid_argument("orbit_flip_set: theta must have an escaping orbit");
  }
  big_int v(theta_);
  while (v <= *bound) {
    orbit_.push_back(v);
    v = phi_.apply(v);
  }
  orbit_.push_back(v);
  ascent_begin_ = orbit_.size() - 1;
}

std::optional<std::uint64_t> orbit_flip_set::orbit_step(const big_int& index) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (orbit_.back() < index) orbit_.push_back(phi_.apply(orbit_.back()));
  for (std::size_t m = 0; m < ascent_begin_; ++m) {
    if (orbit_[m] == index) return m;
  }
  const auto begin = orbit_.begin() + static_cast<std::ptrdiff_t>(ascent_begin_);
  const auto it = std::lower_bound(begin, orbit_.end(), index);
  if (it != orbit_.end() && *it == index) {
    return static_cast<std::uint64_t>(it - orbit_.begin());
  }
  return std::nullopt;
}

bool orbit_flip_set::contains(const big_int& index) const {
  if (index <= big_int(agree_prefix_)) return false;
  const auto m = orbit_step(index);
  if (!m) return false;
  if (*m < from_step_) return false;
  return !blocks_only_ || in_doubling_block(*m);
}

configuration::configuration(alphabet alpha, std::map<std::uint64_t, int> overrides, fill_rule fill)
    : alpha_(alpha), overrides_(std::move(overrides)), fill_(std::move(fill)) {
  for (const auto& [index, symbol] : overrides_) {
    if (index < 1) throw std::invalid_argument("configuration: indices start at 1");
    check_symbol(symbol);
  }
  for (int symbol : fill_.pattern()) check_symbol(symbol);
}

void configuration::check_symbol(int symbol) const {
  if (symbol < 0 || symbol >= alpha_.size) {
    throw std::invalid_argument("configuration: symbol " + std::to_string(symbol) +
                                " outside alphabet of size " + std::to_string(alpha_.size));
  }
}

int configuration::coordinate(const big_int& n) const {
  if (n < 1) throw std::invalid_argument("coordinate: index must be >= 1");
  const bool small = n <= big_int(u64_max);
  const std::uint64_t n64 = small ? static_cast<std::uint64_t>(n) : 0;
  if (small) {
    if (const auto it = modifications_.find(n64); it != modifications_.end()) return it->second;
  }
  int base = fill_.at(n);
  if (small) {
    if (const auto it = overrides_.find(n64); it != overrides_.end()) base = it->second;
  }
  if (flips_ && flips_->contains(n)) return base == 0 ? 1 : 0;
  return base;
}

configuration configuration::with_flip_layer(map_spec phi, std::uint64_t theta,
                                             std::uint64_t from_step, bool blocks_only,
                                             std::uint64_t agree_prefix) const {
  if (flips_) throw std::logic_error("configuration: flip layer already present");
  configuration out = *this;
  out.flips_ = std::make_shared<const orbit_flip_set>(std::move(phi), theta, from_step,
                                                      blocks_only, agree_prefix);
  return out;
}

configuration configuration::with_coordinate(std::uint64_t n, int symbol) const {
  if (n < 1) throw std::invalid_argument("with_coordinate: index must be >= 1");
  check_symbol(symbol);
  configuration out = *this;
  if (flips_) {
    out.modifications_[n] = symbol;
  } else {
    out.overrides_[n] = symbol;
  }
  return out;
}

bool operator==(const configuration& a, const configuration& b) {
  if (!(a.alpha_ == b.alpha_ && a.overrides_ == b.overrides_ && a.fill_ == b.fill_ &&
        a.modifications_ == b.modifications_)) {
    return false;
  }
  if (static_cast<bool>(a.flips_) != static_cast<bool>(b.flips_)) return false;
  return !a.flips_ || *a.flips_ == *b.flips_;
}

configuration all_constant(const alphabet& alpha, int symbol) {
  return configuration(alpha, {}, fill_rule::constant(symbol));
}

enumeration::enumeration(std::vector<std::uint64_t> images) : images_(std::move(images)) {
  inverse_.assign(images_.size(), 0);
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto v = images_[i];
    if (v < 1 || v > images_.size() || seen[v - 1]) {
      throw std::invalid_argument("enumeration: not a permutation of {1..k}");
    }
    seen[v - 1] = true;
    inverse_[v - 1] = i + 1;
  }
}

std::uint64_t enumeration::at(std::uint64_t i) const {
  if (i < 1) throw std::invalid_argument("enumeration: positions start at 1");
  if (i <= images_.size()) return images_[i - 1];
  return i;
}

std::uint64_t enumeration::position_of(std::uint64_t index) const {
  if (index < 1) throw std::invalid_argument("enumeration: indices start at 1");
  if (index <= inverse_.size()) return inverse_[index - 1];
  return index;
}

namespace {

void check_depth(unsigned depth) {
  if (depth < 1 || depth > max_metric_depth) {
    throw std::invalid_argument("depth must be in [1, " + std::to_string(max_metric_depth) + "]");
  }
}

void check_alphabets(const configuration& x, const configuration& y) {
  if (!(x.alpha() == y.alpha())) throw alphabet_mismatch("configurations use different alphabets");
}

bool finitely_supported_within(const configuration& c, unsigned depth, const enumeration& order) {
  if (c.flips() || !c.fill().is_constant()) return false;
  auto within = [&](const std::map<std::uint64_t, int>& table) {
    return std::all_of(table.begin(), table.end(), [&](const auto& kv) {
      return order.position_of(kv.first) <= depth;
    });
  };
  return within(c.overrides()) && within(c.modifications());
}

}  // namespace

distance_interval distance(const configuration& x, const configuration& y, unsigned depth,
                           const enumeration& order) {
  check_depth(depth);
  check_alphabets(x, y);
  if (x == y) return {dyadic(0), dyadic(0), depth};
  std::int64_t num = 0;
  for (unsigned i = 1; i <= depth; ++i) {
    const big_int index(order.at(i));
    if (x.coordinate(index) != y.coordinate(index)) {
      num += std::int64_t{1} << (depth - i);
    }
  }
  const dyadic lower = dyadic::scaled(num, depth);
  // Coordinates past position `depth` provably agree when both points are the
  // same constant beyond overrides that all sit within the first positions.
  const bool exact = x.fill().is_constant() && y.fill().is_constant() &&
                     x.fill().pattern() == y.fill().pattern() &&
                     finitely_supported_within(x, depth, order) &&
                     finitely_supported_within(y, depth, order);
  return {lower, exact ? lower : lower + dyadic::pow2(-static_cast<int>(depth)), depth};
}

int shifted_coordinate(const map_spec& phi, const configuration& x, const big_int& n,
                       std::uint64_t t) {
  return x.coordinate(iterate(phi, n, t));
}

distance_interval orbit_distance(const map_spec& phi, const configuration& x,
                                 const configuration& y, std::uint64_t t, unsigned depth,
                                 const enumeration& order) {
  if (t == 0) return distance(x, y, depth, order);
  check_depth(depth);
  check_alphabets(x, y);
  if (x == y) return {dyadic(0), dyadic(0), depth};
  std::int64_t num = 0;
  for (unsigned i = 1; i <= depth; ++i) {
    const big_int index = iterate(phi, big_int(order.at(i)), t);
    if (x.coordinate(index) != y.coordinate(index)) {
      num += std::int64_t{1} << (depth - i);
    }
  }
  const dyadic lower = dyadic::scaled(num, depth);
  return {lower, lower + dyadic::pow2(-static_cast<int>(depth)), depth};
}

}  // namespace gshift
