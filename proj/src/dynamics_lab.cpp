#include "gshift/dynamics_lab.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace gshift {

namespace {

void check_series_args(std::uint64_t horizon, unsigned depth) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (depth < 1 || depth > max_metric_depth) {
    throw std::invalid_argument("depth must be in [1, " + std::to_string(max_metric_depth) + "]");
  }
}

// phi^t(order(i)) for i = 1..depth, t = 0..horizon
std::vector<std::vector<big_int>> index_traces(const map_spec& phi, std::uint64_t horizon,
                                               unsigned depth, const enumeration& order) {
  std::vector<std::vector<big_int>> traces(depth);
  for (unsigned i = 1; i <= depth; ++i) {
    auto& trace = traces[i - 1];
    trace.reserve(horizon + 1);
    big_int v(order.at(i));
    for (std::uint64_t t = 0; t <= horizon; ++t) {
      trace.push_back(v);
      v = phi.apply(v);
    }
  }
  return traces;
}

distance_series series_from_traces(const std::vector<std::vector<big_int>>& traces,
                                   const configuration& x, const configuration& y,
                                   std::uint64_t horizon, unsigned depth) {
  if (x == y) {
    distance_series out{{}, depth, horizon};
    out.entries.assign(horizon + 1, distance_interval{dyadic(0), dyadic(0), depth});
    return out;
  }
  std::vector<std::int64_t> nums(horizon + 1, 0);
  for (unsigned i = 1; i <= depth; ++i) {
    const std::int64_t weight = std::int64_t{1} << (depth - i);
    const auto& trace = traces[i - 1];
    for (std::uint64_t t = 0; t <= horizon; ++t) {
      if (x.coordinate(trace[t]) != y.coordinate(trace[t])) nums[t] += weight;
    }
  }
  distance_series out{{}, depth, horizon};
  out.entries.reserve(horizon + 1);
  const dyadic slack = dyadic::pow2(-static_cast<int>(depth));
  for (std::uint64_t t = 0; t <= horizon; ++t) {
    const dyadic lower = dyadic::scaled(nums[t], depth);
    out.entries.push_back({lower, lower + slack, depth});
  }
  return out;
}

}  // namespace

distance_series make_distance_series(const map_spec& phi, const configuration& x,
                                     const configuration& y, std::uint64_t horizon, unsigned depth,
                                     const enumeration& order) {
  check_series_args(horizon, depth);
  if (!(x.alpha() == y.alpha())) throw alphabet_mismatch("configurations use different alphabets");
  return series_from_traces(index_traces(phi, horizon, depth, order), x, y, horizon, depth);
}

window_estimates estimate_liminf_limsup(const distance_series& series, std::uint64_t window_start) {
  if (window_start >= series.entries.size()) {
    throw empty_window("window start is past the horizon");
  }
  window_estimates est{series.entries[window_start].upper, series.entries[window_start].lower};
  for (std::uint64_t t = window_start + 1; t < series.entries.size(); ++t) {
    est.liminf_upper = std::min(est.liminf_upper, series.entries[t].upper);
    est.limsup_lower = std::max(est.limsup_lower, series.entries[t].lower);
  }
  return est;
}

std::string to_string(scramble_verdict v) {
  switch (v) {
    case scramble_verdict::likely_scrambled: return "likely_scrambled";
    case scramble_verdict::likely_not_scrambled: return "likely_not_scrambled";
    case scramble_verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

scrambled_verdict_result classify_scrambled(const map_spec& phi, const configuration& x,
                                            const configuration& y, std::uint64_t horizon,
                                            unsigned depth, std::uint64_t window_start,
                                            const dyadic& tolerance, const dyadic& separation,
                                            const enumeration& order) {
  if (tolerance <= dyadic(0) || separation <= dyadic(0)) {
    throw std::invalid_argument("tolerance and separation must be positive");
  }
  const distance_series series = make_distance_series(phi, x, y, horizon, depth, order);
  scrambled_verdict_result r;
  r.estimates = estimate_liminf_limsup(series, window_start);
  r.window_min_lower = series.entries[window_start].lower;
  r.window_max_upper = series.entries[window_start].upper;
  for (std::uint64_t t = window_start + 1; t <= horizon; ++t) {
    r.window_min_lower = std::min(r.window_min_lower, series.entries[t].lower);
    r.window_max_upper = std::max(r.window_max_upper, series.entries[t].upper);
  }
  r.window_start = window_start;
  r.tolerance = tolerance;
  r.separation = separation;
  if (r.estimates.liminf_upper <= tolerance && r.estimates.limsup_lower >= separation) {
    r.verdict = scramble_verdict::likely_scrambled;
  } else if (r.window_min_lower > tolerance || r.window_max_upper < separation) {
    r.verdict = scramble_verdict::likely_not_scrambled;
  } else {
    r.verdict = scramble_verdict::inconclusive;
  }
  return r;
}

occurrence_set probe_occurrence_set(const map_spec& phi, const alphabet& alpha,
                                    const configuration& x,
                                    const std::vector<std::uint64_t>& neighborhood_coords,
                                    const dyadic& epsilon, std::uint64_t horizon, unsigned depth) {
  if (epsilon <= dyadic(0)) throw std::invalid_argument("epsilon must be positive");
  occurrence_set out;
  out.epsilon = epsilon;
  out.horizon = horizon;
  if (!w_nonempty(phi)) {
    // No witness exists; every pinned-neighborhood pair stays below the
    // certificate bound, so the probe reports no separation times.
    return out;
  }
  const sensitivity_witness w = make_sensitivity_witness(phi, alpha, x, neighborhood_coords);
  const unsigned effective_depth =
      std::max<unsigned>(depth, static_cast<unsigned>(std::min<std::uint64_t>(w.theta_index, max_metric_depth)));
  const distance_series series = make_distance_series(phi, x, w.z, horizon, effective_depth);
  for (std::uint64_t t = 0; t <= horizon; ++t) {
    if (series.entries[t].lower > epsilon) out.times.push_back(t);
  }
  for (std::size_t i = 1; i < out.times.size(); ++i) {
    out.gap_max = std::max(out.gap_max, out.times[i] - out.times[i - 1]);
  }
  out.density = static_cast<double>(out.times.size()) / static_cast<double>(horizon + 1);
  return out;
}

bool verification_report::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const claim_result& c) {
    return c.outcome == claim_result::status::pass;
  });
}

bool verification_report::any_failed() const {
  return std::any_of(claims.begin(), claims.end(), [](const claim_result& c) {
    return c.outcome == claim_result::status::fail;
  });
}

bool verification_report::any_inconclusive() const {
  return std::any_of(claims.begin(), claims.end(), [](const claim_result& c) {
    return c.outcome == claim_result::status::inconclusive;
  });
}

std::string to_string(claim_result::status s) {
  switch (s) {
    case claim_result::status::pass: return "pass";
    case claim_result::status::fail: return "fail";
    case claim_result::status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

using status = claim_result::status;

claim_result make_claim(std::string name, bool pass, std::string details) {
  return {std::move(name), pass ? status::pass : status::fail, std::move(details)};
}

claim_result inconclusive_claim(std::string name, std::string details) {
  return {std::move(name), status::inconclusive, std::move(details)};
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

// Random point agreeing with `base` on `pinned`: every other coordinate up to
// max(pinned)+4 and the fill constant are randomized, so the pair may differ
// at infinitely many coordinates outside the pinned set.
configuration sample_agreeing(const configuration& base, const std::set<std::uint64_t>& pinned,
                              std::mt19937_64& rng) {
  const auto symbols = static_cast<std::uint64_t>(base.alpha().size);
  std::uint64_t high = 4;
  if (!pinned.empty()) high += *pinned.rbegin();
  std::map<std::uint64_t, int> overrides;
  for (std::uint64_t n = 1; n <= high; ++n) {
    if (pinned.count(n)) {
      overrides[n] = base.coordinate(big_int(n));
    } else {
      overrides[n] = static_cast<int>(draw(rng, 0, symbols - 1));
    }
  }
  return configuration(base.alpha(), std::move(overrides),
                       fill_rule::constant(static_cast<int>(draw(rng, 0, symbols - 1))));
}

std::string show(const dyadic& d) { return d.to_string(); }

claim_result check_diagram(const chaos_profile& p) {
  const bool ok = (!p.devaney_chaotic || p.li_yorke_sensitive) &&
                  (!p.li_yorke_sensitive || p.sensitive);
  return make_claim("diagram_implications", ok,
                    ok ? "devaney => li_yorke_sensitive => sensitive"
                       : "implication chain violated");
}

claim_result check_core_scan(const map_spec& phi, const chaos_profile& p) {
  const auto bound = phi.escape_bound();
  bool scan_no_periodic;
  if (!bound) {
    scan_no_periodic = false;
  } else {
    scan_no_periodic = true;
    for (std::uint64_t n = 1; n <= *bound; ++n) {
      if (!classify_point(phi, big_int(n)).is_escaping()) {
        scan_no_periodic = false;
        break;
      }
    }
  }
  const bool ok = scan_no_periodic == p.li_yorke_sensitive;
  std::ostringstream details;
  details << "core scan (n <= " << (bound ? *bound : 0) << ") no-periodic=" << scan_no_periodic;
  return make_claim("core_scan_consistency", ok, details.str());
}

claim_result check_entropy(const chaos_profile& p) {
  const bool ok = p.sensitive == p.entropy.positive() &&
                  p.topologically_chaotic == p.entropy.positive();
  return make_claim("entropy_matches_sensitivity", ok,
                    std::string("entropy positive=") + (p.entropy.positive() ? "true" : "false"));
}

claim_result check_orbit_count(const map_spec& phi, const chaos_profile& p) {
  const auto& oc = p.entropy.factor;
  std::ostringstream details;
  if (!oc.infinite() && *oc.value == 0) {
    bool ok = !phi.tail_escaping();
    for (std::uint64_t n = 1; ok && n <= 8; ++n) {
      ok = !classify_point(phi, big_int(n)).is_escaping();
    }
    details << "no escaping orbit among the sampled points";
    return make_claim("orbit_count_certified", ok, details.str());
  }
  const std::size_t exhibit = oc.infinite() ? 8 : static_cast<std::size_t>(*oc.value);
  const auto points = disjoint_escaping_points(phi, exhibit);
  bool ok = true;
  for (std::size_t i = 0; i < points.size() && ok; ++i) {
    for (std::size_t j = i + 1; j < points.size() && ok; ++j) {
      ok = !orbits_intersect(phi, big_int(points[i]), big_int(points[j]));
    }
  }
  details << points.size() << " pairwise disjoint orbits from {";
  for (std::size_t i = 0; i < points.size(); ++i) details << (i ? "," : "") << points[i];
  details << "}";
  if (ok && !oc.infinite()) {
    // one more point than the count must collide somewhere
    const auto bound = *phi.escape_bound();
    std::vector<std::uint64_t> crowd;
    for (std::uint64_t c = bound + 1; crowd.size() < *oc.value + 1; ++c) crowd.push_back(c);
    bool collision = false;
    for (std::size_t i = 0; i < crowd.size() && !collision; ++i) {
      for (std::size_t j = i + 1; j < crowd.size() && !collision; ++j) {
        collision = orbits_intersect(phi, big_int(crowd[i]), big_int(crowd[j]));
      }
    }
    ok = collision;
    details << "; " << crowd.size() << " consecutive points collide=" << (collision ? "yes" : "no");
  }
  return make_claim("orbit_count_certified", ok, details.str());
}

claim_result check_sensitivity_witness(const map_spec& phi, const alphabet& alpha,
                                       const budget& b) {
  const configuration x = all_constant(alpha, 0);
  const sensitivity_witness w = make_sensitivity_witness(phi, alpha, x, {1, 2, 3});
  if (w.theta_index > max_metric_depth) {
    return inconclusive_claim("sensitivity_witness_bound",
                              "separation coordinate exceeds the metric depth cap");
  }
  const unsigned depth = std::max(b.depth, static_cast<unsigned>(w.theta_index));
  const std::uint64_t horizon = std::max<std::uint64_t>(b.horizon, 200);
  const distance_series series = make_distance_series(phi, x, w.z, horizon, depth);
  for (std::uint64_t m = w.from_step; m <= horizon; ++m) {
    if (!(series.entries[m].lower >= w.separation)) {
      std::ostringstream details;
      details << "lower bound " << show(series.entries[m].lower) << " below " << show(w.separation)
              << " at t=" << m;
      return make_claim("sensitivity_witness_bound", false, details.str());
    }
  }
  std::ostringstream details;
  details << "lower >= " << show(w.separation) << " for all t in [" << w.from_step << ", "
          << horizon << "]";
  return make_claim("sensitivity_witness_bound", true, details.str());
}

// A negative scrambling verdict is conclusive only when the probed window
// contains a full agreement gap [4^j, 2*4^j) and difference block
// [2*4^j, 4^(j+1)) of the witness schedule.
bool schedule_visible(std::uint64_t window_start, std::uint64_t horizon) {
  for (std::uint64_t scale = 4; scale <= horizon; scale *= 4) {
    if (scale >= window_start && 4 * scale - 1 <= horizon) return true;
  }
  return false;
}

claim_result scramble_claim(const char* name, const scrambled_verdict_result& r,
                            std::uint64_t horizon, std::string prefix_note = "") {
  std::ostringstream details;
  details << prefix_note << "liminf_upper=" << show(r.estimates.liminf_upper)
          << " limsup_lower=" << show(r.estimates.limsup_lower) << " verdict=" << to_string(r.verdict);
  if (r.verdict == scramble_verdict::likely_scrambled) {
    return make_claim(name, true, details.str());
  }
  if (r.verdict == scramble_verdict::likely_not_scrambled &&
      schedule_visible(r.window_start, horizon)) {
    return make_claim(name, false, details.str());
  }
  if (r.verdict == scramble_verdict::likely_not_scrambled) {
    details << " (window too small for the difference schedule)";
  }
  return inconclusive_claim(name, details.str());
}

claim_result check_scrambled_pair(const map_spec& phi, const alphabet& alpha, const budget& b) {
  const scrambled_candidate cand = make_scrambled_pair(phi, alpha);
  if (cand.theta > max_metric_depth) {
    return inconclusive_claim("scrambled_pair_detected",
                              "separation coordinate exceeds the metric depth cap");
  }
  const unsigned depth = std::max(b.depth, static_cast<unsigned>(cand.theta));
  const std::uint64_t window = std::min(b.window, b.horizon / 2);
  const auto r = classify_scrambled(phi, cand.x, cand.y, b.horizon, depth, window,
                                    dyadic::pow2(-static_cast<int>(depth / 2)),
                                    dyadic::pow2(-static_cast<int>(cand.theta)));
  return scramble_claim("scrambled_pair_detected", r, b.horizon);
}

claim_result check_occurrence_cofinite(const map_spec& phi, const alphabet& alpha,
                                       const budget& b) {
  const configuration x = all_constant(alpha, 0);
  const sensitivity_witness w = make_sensitivity_witness(phi, alpha, x, {1, 2, 3});
  if (w.theta_index + 1 > max_metric_depth) {
    return inconclusive_claim("occurrence_times_cofinite",
                              "separation coordinate exceeds the metric depth cap");
  }
  const dyadic eps = dyadic::pow2(-static_cast<int>(w.theta_index) - 1);
  const occurrence_set occ = probe_occurrence_set(phi, alpha, x, {1, 2, 3}, eps, b.horizon, b.depth);
  std::set<std::uint64_t> times(occ.times.begin(), occ.times.end());
  bool ok = true;
  for (std::uint64_t t = w.from_step; t <= b.horizon && ok; ++t) ok = times.count(t) > 0;
  std::ostringstream details;
  details << "times cover [" << w.from_step << ", " << b.horizon << "]=" << (ok ? "yes" : "no")
          << " gap_max=" << occ.gap_max << " density=" << occ.density;
  return make_claim("occurrence_times_cofinite", ok, details.str());
}

claim_result check_certificate(const map_spec& phi, const alphabet& alpha, const budget& b) {
  const dyadic eps = dyadic::pow2(-3);
  const non_sensitivity_certificate cert = make_non_sensitivity_certificate(phi, eps);
  const configuration x = all_constant(alpha, 0);
  const std::set<std::uint64_t> pinned(cert.lambda.begin(), cert.lambda.end());
  std::mt19937_64 rng(b.seed ^ 0x6c616d626461ULL);
  const std::uint64_t horizon = std::max<std::uint64_t>(b.horizon, 200);
  const auto traces = index_traces(phi, horizon, cert.depth, {});
  for (unsigned s = 0; s < b.samples; ++s) {
    const configuration xs = sample_agreeing(x, {}, rng);
    const configuration ys = sample_agreeing(xs, pinned, rng);
    const distance_series series = series_from_traces(traces, xs, ys, horizon, cert.depth);
    for (std::uint64_t t = 0; t <= horizon; ++t) {
      if (!(series.entries[t].upper < eps)) {
        std::ostringstream details;
        details << "sample " << s << " reaches " << show(series.entries[t].upper) << " at t=" << t;
        return make_claim("non_sensitivity_certificate_holds", false, details.str());
      }
    }
  }
  std::ostringstream details;
  details << b.samples << " pinned pairs stay below " << show(eps) << " up to t=" << horizon
          << " (lambda size " << cert.lambda.size() << ")";
  return make_claim("non_sensitivity_certificate_holds", true, details.str());
}

claim_result check_occurrence_empty(const map_spec& phi, const alphabet& alpha, const budget& b) {
  const configuration x = all_constant(alpha, 0);
  const occurrence_set occ =
      probe_occurrence_set(phi, alpha, x, {1, 2, 3}, dyadic::pow2(-3), b.horizon, b.depth);
  return make_claim("occurrence_times_empty", occ.times.empty(),
                    "probe reports " + std::to_string(occ.times.size()) + " separation times");
}

claim_result check_li_yorke(const map_spec& phi, const alphabet& alpha, const budget& b) {
  const configuration x = all_constant(alpha, 0);
  const li_yorke_pair ly = make_li_yorke_witness(phi, alpha, x, 4);
  if (ly.theta > max_metric_depth) {
    return inconclusive_claim("li_yorke_witness_scrambled",
                              "separation coordinate exceeds the metric depth cap");
  }
  const unsigned depth = std::max(b.depth, static_cast<unsigned>(ly.theta));
  const std::uint64_t window = std::min(b.window, b.horizon / 2);
  const auto r = classify_scrambled(phi, x, ly.y, b.horizon, depth, window,
                                    dyadic::pow2(-static_cast<int>(depth / 2)),
                                    dyadic::pow2(-static_cast<int>(ly.theta)));
  return scramble_claim("li_yorke_witness_scrambled", r, b.horizon, "prefix=4 ");
}

claim_result check_li_yorke_near_base(const map_spec& phi, const alphabet& alpha,
                                      const budget& b) {
  const configuration x = all_constant(alpha, 0);
  dyadic previous_lower = dyadic(1);
  for (std::uint64_t prefix : {std::uint64_t{1}, std::uint64_t{4}, std::uint64_t{8}}) {
    const li_yorke_pair ly = make_li_yorke_witness(phi, alpha, x, prefix);
    const unsigned depth = std::max<unsigned>(b.depth, 16);
    const distance_interval d = distance(x, ly.y, depth);
    if (!(d.upper <= dyadic::pow2(-static_cast<int>(prefix)))) {
      return make_claim("li_yorke_witness_near_base", false,
                        "distance upper " + show(d.upper) + " above 2^-" + std::to_string(prefix));
    }
    if (!(d.lower <= previous_lower)) {
      return make_claim("li_yorke_witness_near_base", false,
                        "distance lower not monotone at prefix " + std::to_string(prefix));
    }
    previous_lower = d.lower;
  }
  return make_claim("li_yorke_witness_near_base", true,
                    "witness distance upper <= 2^-prefix for prefixes {1,4,8}");
}

claim_result check_refutation(const map_spec& phi, const alphabet& alpha, const budget& b) {
  const dense_chaos_refutation ref = make_dense_chaos_refutation(phi, alpha);
  if (ref.beta > max_metric_depth) {
    return inconclusive_claim("dense_chaos_refutation_holds",
                              "periodic index exceeds the metric depth cap");
  }
  const unsigned depth = std::max(b.depth, static_cast<unsigned>(ref.beta));
  const std::uint64_t horizon = std::max<std::uint64_t>(b.horizon, 200);
  std::mt19937_64 rng(b.seed ^ 0x7265667574ULL);
  const std::set<std::uint64_t> cycle(ref.cycle.begin(), ref.cycle.end());
  const auto traces = index_traces(phi, horizon, depth, {});
  for (unsigned s = 0; s < b.samples; ++s) {
    configuration u = box_corner(ref, alpha, ref.box_u_symbol,
                                 static_cast<int>(draw(rng, 0, alpha.size - 1)));
    configuration v = box_corner(ref, alpha, ref.box_v_symbol,
                                 static_cast<int>(draw(rng, 0, alpha.size - 1)));
    const std::uint64_t high = *cycle.rbegin() + 6;
    for (std::uint64_t n = 1; n <= high; ++n) {
      if (cycle.count(n)) continue;
      u = u.with_coordinate(n, static_cast<int>(draw(rng, 0, alpha.size - 1)));
      v = v.with_coordinate(n, static_cast<int>(draw(rng, 0, alpha.size - 1)));
    }
    const distance_series series = series_from_traces(traces, u, v, horizon, depth);
    for (std::uint64_t t = 0; t <= horizon; ++t) {
      if (!(series.entries[t].lower >= ref.separation)) {
        std::ostringstream details;
        details << "sample " << s << " drops to " << show(series.entries[t].lower) << " at t=" << t;
        return make_claim("dense_chaos_refutation_holds", false, details.str());
      }
    }
  }
  std::ostringstream details;
  details << b.samples << " box pairs keep lower >= " << show(ref.separation)
          << " up to t=" << horizon;
  return make_claim("dense_chaos_refutation_holds", true, details.str());
}

}  // namespace

verification_report verify_against(const map_spec& phi, const alphabet& alpha,
                                   const chaos_profile& profile, const budget& b) {
  verification_report report;
  auto run = [&report](claim_result (*fn)(const map_spec&, const alphabet&, const budget&),
                       const map_spec& m, const alphabet& a, const budget& bud,
                       const char* name) {
    try {
      report.claims.push_back(fn(m, a, bud));
    } catch (const std::overflow_error& e) {
      // representability limit, not a refuted claim
      report.claims.push_back({name, status::inconclusive, std::string("exception: ") + e.what()});
    } catch (const std::exception& e) {
      report.claims.push_back({name, status::fail, std::string("exception: ") + e.what()});
    }
  };

  report.claims.push_back(check_diagram(profile));
  report.claims.push_back(check_core_scan(phi, profile));
  report.claims.push_back(check_entropy(profile));
  try {
    report.claims.push_back(check_orbit_count(phi, profile));
  } catch (const std::exception& e) {
    report.claims.push_back(
        {"orbit_count_certified", status::fail, std::string("exception: ") + e.what()});
  }

  if (profile.sensitive) {
    run(check_sensitivity_witness, phi, alpha, b, "sensitivity_witness_bound");
    run(check_scrambled_pair, phi, alpha, b, "scrambled_pair_detected");
    run(check_occurrence_cofinite, phi, alpha, b, "occurrence_times_cofinite");
  } else {
    run(check_certificate, phi, alpha, b, "non_sensitivity_certificate_holds");
    run(check_occurrence_empty, phi, alpha, b, "occurrence_times_empty");
  }

  if (profile.li_yorke_sensitive) {
    run(check_li_yorke, phi, alpha, b, "li_yorke_witness_scrambled");
    run(check_li_yorke_near_base, phi, alpha, b, "li_yorke_witness_near_base");
  } else {
    run(check_refutation, phi, alpha, b, "dense_chaos_refutation_holds");
  }
  return report;
}

verification_report verify_profile(const map_spec& phi, const alphabet& alpha, const budget& b) {
  return verify_against(phi, alpha, classify(phi, alpha.size), b);
}

}  // namespace gshift
