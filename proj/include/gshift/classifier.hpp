#pragma once

#include <cmath>
#include <limits>

#include "gshift/configuration.hpp"
#include "gshift/map_spec.hpp"

namespace gshift {

// Topological entropy of the shift: (disjoint orbit count) * log(alphabet),
// kept symbolic so exact factors survive serialization.
struct entropy_value {
  disjoint_orbit_count factor;
  int alphabet_size = 2;

  bool infinite() const { return factor.infinite(); }
  bool zero() const { return !factor.infinite() && *factor.value == 0; }
  bool positive() const { return !zero(); }

  double nats() const {
    if (infinite()) return std::numeric_limits<double>::infinity();
    return static_cast<double>(*factor.value) * std::log(static_cast<double>(alphabet_size));
  }

  friend bool operator==(const entropy_value&, const entropy_value&) = default;
};

// The full taxonomy decided by the shift's index map. The flags come in three
// equivalence groups plus dense periodic points:
//   injective && no periodic point  <=>  Devaney chaotic, transitive
//   no periodic point               <=>  the Li-Yorke sensitivity group
//   some infinite orbit             <=>  the sensitivity group
//   injective                       <=>  dense periodic points
struct chaos_profile {
  bool devaney_chaotic = false;
  bool topologically_transitive = false;

  bool li_yorke_sensitive = false;
  bool densely_eps_chaotic = false;
  bool spatiotemporally_chaotic = false;
  bool densely_chaotic = false;

  bool sensitive = false;
  bool strongly_sensitive = false;
  bool asymptotic_sensitive = false;
  bool syndetically_sensitive = false;
  bool cofinitely_sensitive = false;
  bool multi_sensitive = false;
  bool ergodically_sensitive = false;
  bool li_yorke_chaotic = false;
  bool topologically_chaotic = false;

  bool dense_periodic_points = false;

  entropy_value entropy{disjoint_orbit_count::exactly(0), 2};
  int alphabet_size = 2;

  friend bool operator==(const chaos_profile&, const chaos_profile&) = default;
};

chaos_profile classify(const map_spec& phi, int alphabet_size);

entropy_value entropy(const map_spec& phi, int alphabet_size);

}  // namespace gshift
