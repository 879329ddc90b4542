#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gshift/classifier.hpp"
#include "gshift/configuration.hpp"
#include "gshift/dynamics_lab.hpp"
#include "gshift/map_spec.hpp"
#include "gshift/witnesses.hpp"

namespace gshift {

inline constexpr const char* tool_name = "gshift";
inline constexpr const char* tool_version = "0.1.0";
inline constexpr int report_schema_version = 1;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A named map plus the alphabet it acts on.
struct map_document {
  std::string name;
  map_spec map;
  int alphabet_size = 2;
};

map_document parse_map_document(const std::string& text);
map_document load_map_document(const std::string& path);

nlohmann::json tool_json();
nlohmann::json map_json(const map_document& doc);
nlohmann::json dyadic_json(const dyadic& d);
nlohmann::json interval_json(const distance_interval& iv);
nlohmann::json entropy_json(const entropy_value& e);
nlohmann::json profile_json(const chaos_profile& p);
nlohmann::json configuration_json(const configuration& c);
nlohmann::json budget_json(const budget& b);
nlohmann::json verification_json(const verification_report& r);
nlohmann::json occurrence_json(const occurrence_set& o);

nlohmann::json witness_json(const scrambled_candidate& w);
nlohmann::json witness_json(const li_yorke_pair& w);
nlohmann::json witness_json(const sensitivity_witness& w);
nlohmann::json witness_json(const non_sensitivity_certificate& w);
nlohmann::json witness_json(const dense_chaos_refutation& w);

// "num/2^k", "num/den" with den a power of two, or a bare integer.
dyadic parse_dyadic(const std::string& text);

}  // namespace gshift
