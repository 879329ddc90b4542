#include "gshift/classifier.hpp"

namespace gshift {

entropy_value entropy(const map_spec& phi, int alphabet_size) {
  if (alphabet_size < 2) throw alphabet_too_small("entropy: alphabet needs at least two symbols");
  return {orbit_count(phi), alphabet_size};
}

chaos_profile classify(const map_spec& phi, int alphabet_size) {
  if (alphabet_size < 2) throw alphabet_too_small("classify: alphabet needs at least two symbols");
  const bool injective = is_injective(phi);
  const bool no_periodic = per_empty(phi);
  const bool some_escaping = w_nonempty(phi);

  chaos_profile p;
  p.devaney_chaotic = injective && no_periodic;
  p.topologically_transitive = p.devaney_chaotic;

  p.li_yorke_sensitive = no_periodic;
  p.densely_eps_chaotic = no_periodic;
  p.spatiotemporally_chaotic = no_periodic;
  p.densely_chaotic = no_periodic;

  p.sensitive = some_escaping;
  p.strongly_sensitive = some_escaping;
  p.asymptotic_sensitive = some_escaping;
  p.syndetically_sensitive = some_escaping;
  p.cofinitely_sensitive = some_escaping;
  p.multi_sensitive = some_escaping;
  p.ergodically_sensitive = some_escaping;
  p.li_yorke_chaotic = some_escaping;
  p.topologically_chaotic = some_escaping;

  p.dense_periodic_points = injective;

  p.entropy = entropy(phi, alphabet_size);
  p.alphabet_size = alphabet_size;
  return p;
}

}  // namespace gshift
