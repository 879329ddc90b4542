#include "gshift/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gshift {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end()) throw parse_error(std::string("missing field '") + field + "'");
  return *it;
}

std::int64_t require_int(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number_integer()) throw parse_error(std::string("field '") + field + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

map_document parse_map_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(e.what());
  }
  if (!j.is_object()) throw parse_error("document must be a JSON object");

  const json& name = require(j, "name");
  if (!name.is_string() || name.get<std::string>().empty()) {
    throw parse_error("field 'name' must be a nonempty string");
  }

  const std::int64_t threshold = require_int(j, "threshold");
  if (threshold < 0) throw parse_error("field 'threshold' must be nonnegative");

  const json& tail_obj = require(j, "tail");
  if (!tail_obj.is_object()) throw parse_error("field 'tail' must be an object");
  affine_tail tail{require_int(tail_obj, "a"), require_int(tail_obj, "b")};

  const json& overrides = require(j, "overrides");
  if (!overrides.is_array()) throw parse_error("field 'overrides' must be an array of [key, image]");
  std::map<std::uint64_t, std::uint64_t> table;
  for (const json& entry : overrides) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer()) {
      throw parse_error("override entries must be [key, image] integer pairs");
    }
    const std::int64_t key = entry[0].get<std::int64_t>();
    const std::int64_t image = entry[1].get<std::int64_t>();
    if (key < 1 || key > threshold) {
      throw parse_error("override key " + std::to_string(key) + " outside {1.." +
                        std::to_string(threshold) + "}");
    }
    if (image < 1) throw parse_error("override image must be >= 1 at key " + std::to_string(key));
    if (!table.emplace(static_cast<std::uint64_t>(key), static_cast<std::uint64_t>(image)).second) {
      throw parse_error("duplicate override key " + std::to_string(key));
    }
  }

  const std::int64_t alphabet_size = require_int(j, "alphabet_size");

  try {
    map_spec parsed_map(static_cast<std::uint64_t>(threshold), std::move(table), tail);
    return {name.get<std::string>(), std::move(parsed_map), static_cast<int>(alphabet_size)};
  } catch (const invalid_map& e) {
    throw parse_error(e.what());
  }
}

map_document load_map_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_map_document(buffer.str());
}

json tool_json() {
  return {{"name", tool_name}, {"version", tool_version}, {"schema_version", report_schema_version}};
}

json map_json(const map_document& doc) {
  json overrides = json::array();
  for (const auto& [key, image] : doc.map.overrides()) {
    overrides.push_back({key, image});
  }
  return {{"name", doc.name},
          {"threshold", doc.map.threshold()},
          {"overrides", overrides},
          {"tail", {{"a", doc.map.tail().a}, {"b", doc.map.tail().b}}},
          {"alphabet_size", doc.alphabet_size}};
}

json dyadic_json(const dyadic& d) {
  return {{"num", d.numerator()}, {"den_pow2", d.den_pow2()}};
}

json interval_json(const distance_interval& iv) {
  return {{"lower", dyadic_json(iv.lower)}, {"upper", dyadic_json(iv.upper)}, {"depth", iv.depth}};
}

json entropy_json(const entropy_value& e) {
  json j;
  j["alphabet_size"] = e.alphabet_size;
  j["log_base"] = "e";
  if (e.infinite()) {
    j["orbit_count"] = "infinity";
    j["nats"] = "infinity";
  } else {
    j["orbit_count"] = *e.factor.value;
    j["nats"] = e.nats();
  }
  j["exact"] = e.factor.exact;
  return j;
}

json profile_json(const chaos_profile& p) {
  return {{"devaney_chaotic", p.devaney_chaotic},
          {"topologically_transitive", p.topologically_transitive},
          {"li_yorke_sensitive", p.li_yorke_sensitive},
          {"densely_eps_chaotic", p.densely_eps_chaotic},
          {"spatiotemporally_chaotic", p.spatiotemporally_chaotic},
          {"densely_chaotic", p.densely_chaotic},
          {"sensitive", p.sensitive},
          {"strongly_sensitive", p.strongly_sensitive},
          {"asymptotic_sensitive", p.asymptotic_sensitive},
          {"syndetically_sensitive", p.syndetically_sensitive},
          {"cofinitely_sensitive", p.cofinitely_sensitive},
          {"multi_sensitive", p.multi_sensitive},
          {"ergodically_sensitive", p.ergodically_sensitive},
          {"li_yorke_chaotic", p.li_yorke_chaotic},
          {"topologically_chaotic", p.topologically_chaotic},
          {"dense_periodic_points", p.dense_periodic_points},
          {"entropy", entropy_json(p.entropy)},
          {"alphabet_size", p.alphabet_size}};
}

json configuration_json(const configuration& c) {
  json j;
  j["alphabet_size"] = c.alpha().size;
  if (c.fill().is_constant()) {
    j["fill"] = {{"constant", c.fill().pattern()[0]}};
  } else {
    j["fill"] = {{"periodic", c.fill().pattern()}};
  }
  json overrides = json::array();
  for (const auto& [index, symbol] : c.overrides()) overrides.push_back({index, symbol});
  j["overrides"] = overrides;
  if (c.flips()) {
    const auto& f = *c.flips();
    j["orbit_flips"] = {{"theta", f.theta()},
                        {"from_step", f.from_step()},
                        {"blocks_only", f.blocks_only()},
                        {"agree_prefix", f.agree_prefix()}};
  }
  if (!c.modifications().empty()) {
    json mods = json::array();
    for (const auto& [index, symbol] : c.modifications()) mods.push_back({index, symbol});
    j["modifications"] = mods;
  }
  return j;
}

json budget_json(const budget& b) {
  return {{"horizon", b.horizon},
          {"depth", b.depth},
          {"window", b.window},
          {"samples", b.samples},
          {"seed", b.seed}};
}

json verification_json(const verification_report& r) {
  json claims = json::array();
  for (const auto& c : r.claims) {
    claims.push_back({{"name", c.name}, {"status", to_string(c.outcome)}, {"details", c.details}});
  }
  return {{"claims", claims},
          {"all_passed", r.all_passed()},
          {"any_failed", r.any_failed()},
          {"any_inconclusive", r.any_inconclusive()}};
}

json occurrence_json(const occurrence_set& o) {
  return {{"epsilon", dyadic_json(o.epsilon)},
          {"horizon", o.horizon},
          {"times", o.times},
          {"gap_max", o.gap_max},
          {"density", o.density}};
}

json witness_json(const scrambled_candidate& w) {
  return {{"kind", "scrambled_pair"},
          {"theta", w.theta},
          {"block_schedule", w.block_schedule},
          {"x", configuration_json(w.x)},
          {"y", configuration_json(w.y)}};
}

json witness_json(const li_yorke_pair& w) {
  return {{"kind", "li_yorke_witness"},
          {"prefix", w.prefix},
          {"theta", w.theta},
          {"mu_estimate", interval_json(w.mu_estimate)},
          {"y", configuration_json(w.y)}};
}

json witness_json(const sensitivity_witness& w) {
  return {{"kind", "sensitivity_witness"},
          {"from_step", w.from_step},
          {"separation", dyadic_json(w.separation)},
          {"theta_index", w.theta_index},
          {"z", configuration_json(w.z)}};
}

json witness_json(const non_sensitivity_certificate& w) {
  return {{"kind", "non_sensitivity_certificate"},
          {"lambda", w.lambda},
          {"epsilon", dyadic_json(w.epsilon)},
          {"depth", w.depth}};
}

json witness_json(const dense_chaos_refutation& w) {
  return {{"kind", "dense_chaos_refutation"},
          {"beta", w.beta},
          {"period", w.period},
          {"cycle", w.cycle},
          {"box_u_symbol", w.box_u_symbol},
          {"box_v_symbol", w.box_v_symbol},
          {"separation", dyadic_json(w.separation)}};
}

dyadic parse_dyadic(const std::string& text) {
  const auto parse_i64 = [](const std::string& s) {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters in number '" + s + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return dyadic(parse_i64(text));
  const std::int64_t num = parse_i64(text.substr(0, slash));
  const std::string den_text = text.substr(slash + 1);
  if (den_text.rfind("2^", 0) == 0) {
    const std::int64_t k = parse_i64(den_text.substr(2));
    if (k < 0 || k > static_cast<std::int64_t>(dyadic::max_den_pow2)) {
      throw std::invalid_argument("denominator exponent out of range in '" + text + "'");
    }
    return dyadic::scaled(num, static_cast<unsigned>(k));
  }
  const std::int64_t den = parse_i64(den_text);
  if (den <= 0 || (den & (den - 1)) != 0) {
    throw std::invalid_argument("denominator must be a power of two in '" + text + "'");
  }
  unsigned k = 0;
  for (std::int64_t d = den; d > 1; d >>= 1) ++k;
  return dyadic::scaled(num, k);
}

}  // namespace gshift
