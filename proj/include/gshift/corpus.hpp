#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gshift/classifier.hpp"
#include "gshift/map_spec.hpp"

namespace gshift {

// Seeded random maps spanning all three tail regimes (bounded, +b
// progression, expanding), with thresholds and coefficients kept small so
// every derived witness coordinate stays well inside the exact-dyadic range.
std::vector<map_spec> generate_corpus(std::size_t count, std::uint64_t seed);

// Cross-map coherence checks tying the profile's flag groups back to
// independently recomputed facts about the map. Returns one message per
// violated invariant; empty means all hold.
std::vector<std::string> corpus_invariant_failures(const map_spec& phi,
                                                   const chaos_profile& profile);

}  // namespace gshift
