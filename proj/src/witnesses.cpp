#include "gshift/witnesses.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "gshift/dynamics_lab.hpp"

namespace gshift {

namespace {
constexpr std::uint64_t u64_max = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t lambda_size_budget = std::uint64_t{1} << 20;

void check_separation_index(std::uint64_t index) {
  if (index > dyadic::max_den_pow2) {
    throw std::overflow_error("separation 2^-" + std::to_string(index) +
                              " is below the exact-dyadic range");
  }
}
}  // namespace

std::uint64_t least_escaping_point(const map_spec& phi) {
  const auto bound = phi.escape_bound();
  if (!bound) throw no_escaping_point("every orbit is finite");
  for (std::uint64_t n = 1;; ++n) {
    if (classify_point(phi, big_int(n)).is_escaping()) return n;  // n = bound+1 always escapes
  }
}

scrambled_candidate make_scrambled_pair(const map_spec& phi, const alphabet& alpha) {
  const std::uint64_t theta = least_escaping_point(phi);
  const configuration x = all_constant(alpha, 0);
  configuration y = x.with_flip_layer(phi, theta, 0, /*blocks_only=*/true, /*agree_prefix=*/0);
  return {x, std::move(y), theta, "differ at orbit steps m in [2*4^j, 4^(j+1)), j >= 0"};
}

li_yorke_pair make_li_yorke_witness(const map_spec& phi, const alphabet& alpha,
                                    const configuration& x, std::uint64_t agree_prefix) {
  if (!per_empty(phi)) throw periodic_point_present("the map has a periodic point");
  if (!(x.alpha() == alpha)) throw alphabet_mismatch("base point uses a different alphabet");
  if (!x.fill().is_constant()) {
    throw std::invalid_argument("li_yorke_witness: base point must have a constant fill");
  }
  if (x.flips()) {
    throw std::invalid_argument("li_yorke_witness: base point already carries a flip layer");
  }
  const std::uint64_t theta = least_escaping_point(phi);
  configuration y = x.with_flip_layer(phi, theta, 0, /*blocks_only=*/true, agree_prefix);

  const scrambled_candidate base = make_scrambled_pair(phi, alpha);
  const budget b;
  const unsigned depth =
      std::max(b.depth, static_cast<unsigned>(std::min<std::uint64_t>(theta, max_metric_depth)));
  const distance_series series = make_distance_series(phi, base.x, base.y, b.horizon, depth);
  distance_interval mu{dyadic(0), dyadic(0), depth};
  for (std::uint64_t t = b.window; t <= b.horizon; ++t) {
    mu.lower = std::max(mu.lower, series.entries[t].lower);
    mu.upper = std::max(mu.upper, series.entries[t].upper);
  }
  return {std::move(y), agree_prefix, theta, mu};
}

sensitivity_witness make_sensitivity_witness(const map_spec& phi, const alphabet& alpha,
                                             const configuration& x,
                                             const std::vector<std::uint64_t>& neighborhood_coords) {
  if (!w_nonempty(phi)) throw no_escaping_point("every orbit is finite");
  if (!(x.alpha() == alpha)) throw alphabet_mismatch("base point uses a different alphabet");
  if (x.flips()) {
    throw std::invalid_argument("sensitivity_witness: base point already carries a flip layer");
  }
  const std::uint64_t theta = least_escaping_point(phi);
  check_separation_index(theta);

  // First step after which the orbit never revisits the pinned coordinates.
  std::uint64_t from_step = 0;
  if (!neighborhood_coords.empty()) {
    const std::set<std::uint64_t> pinned(neighborhood_coords.begin(), neighborhood_coords.end());
    const big_int pinned_max(*pinned.rbegin());
    const big_int bound(*phi.escape_bound());
    big_int v(theta);
    for (std::uint64_t m = 0;; ++m) {
      if (v <= big_int(u64_max) && pinned.count(static_cast<std::uint64_t>(v))) {
        from_step = m + 1;
      }
      if (v > bound && v > pinned_max) break;
      v = phi.apply(v);
    }
  }
  configuration z = x.with_flip_layer(phi, theta, from_step, /*blocks_only=*/false, 0);
  return {std::move(z), from_step, dyadic::pow2(-static_cast<int>(theta)), theta};
}

non_sensitivity_certificate make_non_sensitivity_certificate(const map_spec& phi,
                                                             const dyadic& epsilon) {
  if (w_nonempty(phi)) throw escaping_point_present("the map has an escaping orbit");
  if (!(epsilon > dyadic(0))) throw std::invalid_argument("epsilon must be positive");
  unsigned depth = 1;
  while (depth <= max_metric_depth && !(dyadic::pow2(-static_cast<int>(depth)) < epsilon)) {
    ++depth;
  }
  if (depth > max_metric_depth) {
    throw std::overflow_error("epsilon is below the exact-dyadic range");
  }

  std::set<std::uint64_t> lambda;
  std::vector<std::uint64_t> frontier;
  for (std::uint64_t n = 1; n <= depth; ++n) {
    lambda.insert(n);
    frontier.push_back(n);
  }
  while (!frontier.empty()) {
    const std::uint64_t v = frontier.back();
    frontier.pop_back();
    const big_int image = phi.apply(big_int(v));
    if (image > big_int(u64_max)) {
      throw std::overflow_error("non_sensitivity_certificate: closure value exceeds 64 bits");
    }
    const auto img = static_cast<std::uint64_t>(image);
    if (lambda.insert(img).second) {
      if (lambda.size() > lambda_size_budget) {
        throw budget_exceeded("non_sensitivity_certificate: closure exceeded the size budget");
      }
      frontier.push_back(img);
    }
  }
  return {{lambda.begin(), lambda.end()}, epsilon, depth};
}

dense_chaos_refutation make_dense_chaos_refutation(const map_spec& phi, const alphabet& alpha) {
  if (per_empty(phi)) throw no_periodic_point("the map has no periodic point");
  (void)alpha;  // symbols 0 and 1 exist in every alphabet

  // Least periodic index: scan ascending; the verdict for point 1 bounds the
  // scan for bounded-orbit maps, the escape bound does for escaping tails.
  std::optional<orbit_verdict> found;
  std::uint64_t beta = 0;
  std::uint64_t limit;
  if (const auto bound = phi.escape_bound()) {
    limit = *bound;
  } else {
    const orbit_verdict first = classify_point(phi, big_int(1));
    const auto& cycle = first.as_quasi_periodic().cycle;
    limit = *std::min_element(cycle.begin(), cycle.end());
    if (first.as_quasi_periodic().preperiod == 0) {
      found = first;
      beta = 1;
    }
  }
  for (std::uint64_t n = 1; n <= limit && !found; ++n) {
    orbit_verdict v = classify_point(phi, big_int(n));
    if (!v.is_escaping() && v.as_quasi_periodic().preperiod == 0) {
      found = std::move(v);
      beta = n;
    }
  }
  if (!found) throw std::logic_error("dense_chaos_refutation: periodic scan failed");
  check_separation_index(beta);
  const auto& qp = found->as_quasi_periodic();
  return {beta, qp.period, qp.cycle, 0, 1, dyadic::pow2(-static_cast<int>(beta))};
}

configuration box_corner(const dense_chaos_refutation& refutation, const alphabet& alpha,
                         int symbol, int fill_symbol) {
  std::map<std::uint64_t, int> overrides;
  for (auto index : refutation.cycle) overrides[index] = symbol;
  return configuration(alpha, std::move(overrides), fill_rule::constant(fill_symbol));
}

}  // namespace gshift
