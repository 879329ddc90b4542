#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gshift/classifier.hpp"
#include "gshift/corpus.hpp"
#include "gshift/dynamics_lab.hpp"
#include "gshift/json_io.hpp"
#include "gshift/witnesses.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_parse = 2;
constexpr int exit_invariant = 3;
constexpr int exit_inapplicable = 4;
constexpr int exit_claims_failed = 5;
constexpr int exit_inconclusive = 6;

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json report_head(const char* command) {
  json j;
  j["tool"] = gshift::tool_json();
  j["command"] = command;
  return j;
}

// GSHIFT_BUDGET="horizon=256,depth=16,window=64,samples=50,seed=0"
gshift::budget budget_from_env() {
  gshift::budget b;
  const char* env = std::getenv("GSHIFT_BUDGET");
  if (!env) return b;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw gshift::parse_error("GSHIFT_BUDGET entries must look like key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::uint64_t value = std::stoull(item.substr(eq + 1));
    if (key == "horizon") {
      b.horizon = value;
    } else if (key == "depth") {
      b.depth = static_cast<unsigned>(value);
    } else if (key == "window") {
      b.window = value;
    } else if (key == "samples") {
      b.samples = static_cast<unsigned>(value);
    } else if (key == "seed") {
      b.seed = value;
    } else {
      throw gshift::parse_error("GSHIFT_BUDGET: unknown key '" + key + "'");
    }
  }
  return b;
}

void add_budget_flags(CLI::App* cmd, gshift::budget& b, bool with_seed) {
  cmd->add_option("--horizon", b.horizon, "distance series horizon")->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--depth", b.depth, "metric truncation depth")
      ->check(CLI::Range(1, static_cast<int>(gshift::max_metric_depth)));
  cmd->add_option("--window", b.window, "tail window start for liminf/limsup estimates");
  cmd->add_option("--samples", b.samples, "sampled pairs per certificate check")
      ->check(CLI::Range(1, 10000));
  if (with_seed) cmd->add_option("--seed", b.seed, "seed for sampled pairs");
}

int run_classify(const std::string& path) {
  const gshift::map_document doc = gshift::load_map_document(path);
  const gshift::chaos_profile profile = gshift::classify(doc.map, doc.alphabet_size);
  json report = report_head("classify");
  report["map"] = gshift::map_json(doc);
  report["profile"] = gshift::profile_json(profile);
  emit(report);
  return exit_ok;
}

int run_witness(const std::string& path, const std::string& kind, const std::string& epsilon_text,
                std::uint64_t prefix, const std::vector<std::uint64_t>& coords) {
  const gshift::map_document doc = gshift::load_map_document(path);
  const gshift::alphabet alpha(doc.alphabet_size);
  const gshift::chaos_profile profile = gshift::classify(doc.map, doc.alphabet_size);
  const gshift::configuration base = gshift::all_constant(alpha, 0);

  json payload;
  if (kind == "scrambled") {
    payload = gshift::witness_json(gshift::make_scrambled_pair(doc.map, alpha));
  } else if (kind == "sensitivity") {
    payload = gshift::witness_json(gshift::make_sensitivity_witness(doc.map, alpha, base, coords));
  } else if (kind == "li-yorke") {
    payload = gshift::witness_json(gshift::make_li_yorke_witness(doc.map, alpha, base, prefix));
  } else if (kind == "non-sensitivity") {
    const gshift::dyadic eps = gshift::parse_dyadic(epsilon_text);
    payload = gshift::witness_json(gshift::make_non_sensitivity_certificate(doc.map, eps));
  } else if (kind == "dense-refute") {
    payload = gshift::witness_json(gshift::make_dense_chaos_refutation(doc.map, alpha));
  } else {
    throw gshift::parse_error("unknown witness kind '" + kind + "'");
  }

  json report = report_head("witness");
  report["map"] = gshift::map_json(doc);
  report["profile"] = gshift::profile_json(profile);
  report["witnesses"] = json::array({payload});
  emit(report);
  return exit_ok;
}

int run_verify(const std::string& path, const gshift::budget& b, bool strict) {
  const gshift::map_document doc = gshift::load_map_document(path);
  const gshift::alphabet alpha(doc.alphabet_size);
  const gshift::chaos_profile profile = gshift::classify(doc.map, doc.alphabet_size);
  const gshift::verification_report verification = gshift::verify_against(doc.map, alpha, profile, b);

  json report = report_head("verify");
  report["map"] = gshift::map_json(doc);
  report["profile"] = gshift::profile_json(profile);
  report["verification"] = gshift::verification_json(verification);
  report["budget"] = gshift::budget_json(b);
  emit(report);

  if (verification.any_failed()) {
    for (const auto& c : verification.claims) {
      if (c.outcome == gshift::claim_result::status::fail) {
        std::cerr << "claim failed: " << c.name << ": " << c.details << "\n";
      }
    }
    return exit_claims_failed;
  }
  if (strict && verification.any_inconclusive()) return exit_inconclusive;
  return exit_ok;
}

int run_corpus(std::size_t count, std::uint64_t seed, const gshift::budget& b) {
  const std::vector<gshift::map_spec> maps = gshift::generate_corpus(count, seed);
  json entries = json::array();
  bool all_ok = true;
  std::string first_offender;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    gshift::map_document doc{"corpus-" + std::to_string(seed) + "-" + std::to_string(i), maps[i], 2};
    const gshift::alphabet alpha(doc.alphabet_size);
    const gshift::chaos_profile profile = gshift::classify(doc.map, doc.alphabet_size);
    const std::vector<std::string> failures = gshift::corpus_invariant_failures(doc.map, profile);
    const gshift::verification_report verification = gshift::verify_against(doc.map, alpha, profile, b);
    const bool ok = failures.empty() && !verification.any_failed();
    if (!ok && all_ok) first_offender = doc.name;
    all_ok = all_ok && ok;
    entries.push_back({{"name", doc.name},
                       {"map", gshift::map_json(doc)},
                       {"profile", gshift::profile_json(profile)},
                       {"invariant_failures", failures},
                       {"verification", gshift::verification_json(verification)}});
  }
  json report = report_head("corpus");
  report["corpus"] = {{"count", count}, {"seed", seed}, {"maps", entries}, {"all_ok", all_ok}};
  report["budget"] = gshift::budget_json(b);
  emit(report);
  if (!all_ok) {
    std::cerr << "corpus invariants violated; first offending map: " << first_offender << "\n";
    return exit_claims_failed;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classify generalized shift dynamical systems by their index map"};
  app.require_subcommand(1);

  gshift::budget b;
  try {
    b = budget_from_env();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  }

  std::string path;
  std::string kind;
  std::string epsilon_text = "1/8";
  std::uint64_t prefix = 4;
  std::vector<std::uint64_t> coords = {1, 2, 3};
  bool strict = false;
  std::size_t corpus_count = 0;
  std::uint64_t corpus_seed = 0;

  auto* classify_cmd = app.add_subcommand("classify", "decide the chaos taxonomy of a map document");
  classify_cmd->add_option("file", path, "map document (JSON)")->required();

  auto* witness_cmd = app.add_subcommand("witness", "construct a witness or certificate");
  witness_cmd->add_option("file", path, "map document (JSON)")->required();
  witness_cmd->add_option("--kind", kind, "scrambled|sensitivity|li-yorke|non-sensitivity|dense-refute")
      ->required();
  witness_cmd->add_option("--epsilon", epsilon_text, "dyadic bound, e.g. 1/8 (non-sensitivity)");
  witness_cmd->add_option("--prefix", prefix, "agreement prefix length (li-yorke)");
  witness_cmd->add_option("--coords", coords, "pinned neighborhood coordinates (sensitivity)");

  auto* verify_cmd = app.add_subcommand("verify", "run every applicable empirical check");
  verify_cmd->add_option("file", path, "map document (JSON)")->required();
  add_budget_flags(verify_cmd, b, /*with_seed=*/true);
  verify_cmd->add_flag("--strict", strict, "exit 6 when any claim is inconclusive");

  auto* corpus_cmd = app.add_subcommand("corpus", "generate, classify, and verify seeded random maps");
  corpus_cmd->add_option("--count", corpus_count, "number of maps")->required()->check(CLI::Range(1, 100000));
  corpus_cmd->add_option("--seed", corpus_seed, "generation seed (also seeds sampled pairs)")->required();
  add_budget_flags(corpus_cmd, b, /*with_seed=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return run_classify(path);
    if (witness_cmd->parsed()) return run_witness(path, kind, epsilon_text, prefix, coords);
    if (verify_cmd->parsed()) return run_verify(path, b, strict);
    b.seed = corpus_seed;
    return run_corpus(corpus_count, corpus_seed, b);
  } catch (const gshift::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const gshift::witness_inapplicable& e) {
    std::cerr << "witness inapplicable: " << e.what() << " (blocked by " << e.blocking_flag << ")\n";
    return exit_inapplicable;
  } catch (const gshift::invalid_map& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return exit_invariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invariant;
  }
}
