#include "gshift/corpus.hpp"

#include <random>

namespace gshift {

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

std::int64_t draw_signed(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

std::vector<map_spec> generate_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<map_spec> maps;
  maps.reserve(count);
  while (maps.size() < count) {
    const std::uint64_t threshold = draw(rng, 0, 5);
    affine_tail tail;
    switch (draw(rng, 0, 3)) {
      case 0:  // bounded: constant
        tail = {0, draw_signed(rng, 1, 8)};
        break;
      case 1:  // bounded: n + b with b <= 0
        tail = {1, draw_signed(rng, -4, 0)};
        break;
      case 2:  // escaping progression
        tail = {1, draw_signed(rng, 1, 6)};
        break;
      default:  // expanding
        tail = {draw_signed(rng, 2, 4), draw_signed(rng, -3, 6)};
        break;
    }
    std::map<std::uint64_t, std::uint64_t> overrides;
    for (std::uint64_t n = 1; n <= threshold; ++n) {
      if (draw(rng, 0, 2) == 0) continue;  // leave this key to the tail
      const std::int64_t tail_here = tail.a * static_cast<std::int64_t>(n) + tail.b;
      for (int attempt = 0; attempt < 32; ++attempt) {
        const std::uint64_t image = draw(rng, 1, threshold + 8);
        if (static_cast<std::int64_t>(image) != tail_here) {
          overrides[n] = image;
          break;
        }
      }
    }
    try {
      maps.emplace_back(threshold, std::move(overrides), tail);
    } catch (const invalid_map&) {
      // tail dips below 1 at a non-overridden index; redraw
    }
  }
  return maps;
}

std::vector<std::string> corpus_invariant_failures(const map_spec& phi,
                                                   const chaos_profile& profile) {
  std::vector<std::string> failures;
  const bool no_periodic = per_empty(phi);
  const bool some_escaping = w_nonempty(phi);

  const bool group_all_on = profile.li_yorke_sensitive && profile.densely_eps_chaotic &&
                             profile.spatiotemporally_chaotic && profile.densely_chaotic;
  const bool group_all_off = !profile.li_yorke_sensitive && !profile.densely_eps_chaotic &&
                                 !profile.spatiotemporally_chaotic && !profile.densely_chaotic;
  if (!(no_periodic ? group_all_on : group_all_off)) {
    failures.push_back("Li-Yorke sensitivity group does not collapse to the periodic-point test");
  }

  const bool sensitivity_group =
      profile.sensitive && profile.strongly_sensitive && profile.asymptotic_sensitive &&
      profile.syndetically_sensitive && profile.cofinitely_sensitive && profile.multi_sensitive &&
      profile.ergodically_sensitive && profile.li_yorke_chaotic && profile.topologically_chaotic;
  const bool sensitivity_group_off =
      !profile.sensitive && !profile.strongly_sensitive && !profile.asymptotic_sensitive &&
      !profile.syndetically_sensitive && !profile.cofinitely_sensitive &&
      !profile.multi_sensitive && !profile.ergodically_sensitive && !profile.li_yorke_chaotic &&
      !profile.topologically_chaotic;
  if (!(some_escaping ? sensitivity_group : sensitivity_group_off)) {
    failures.push_back("sensitivity group does not collapse to the escaping-orbit test");
  }

  if (profile.devaney_chaotic && !profile.li_yorke_sensitive) {
    failures.push_back("devaney without Li-Yorke sensitivity");
  }
  if (profile.li_yorke_sensitive && !profile.sensitive) {
    failures.push_back("Li-Yorke sensitivity without sensitivity");
  }
  if (no_periodic && !some_escaping) {
    failures.push_back("no periodic point but no escaping orbit");
  }

  // independent re-derivation on the finite core
  if (const auto bound = phi.escape_bound()) {
    bool core_all_escaping = true;
    for (std::uint64_t n = 1; n <= *bound && core_all_escaping; ++n) {
      core_all_escaping = classify_point(phi, big_int(n)).is_escaping();
    }
    if (core_all_escaping != no_periodic) {
      failures.push_back("core scan disagrees with the periodic-point test");
    }
  } else if (no_periodic) {
    failures.push_back("bounded tail cannot be free of periodic points");
  }

  if (profile.sensitive != profile.entropy.positive()) {
    failures.push_back("sensitivity does not match positive entropy");
  }
  return failures;
}

}  // namespace gshift
