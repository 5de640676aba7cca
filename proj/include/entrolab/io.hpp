#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

#include "json.hpp"

#include "entrolab/corrent.hpp"
#include "entrolab/models.hpp"
#include "entrolab/prover.hpp"
#include "entrolab/search.hpp"
#include "entrolab/universe.hpp"

namespace entrolab::io {

inline constexpr const char* kVersion = "entrolab 0.1.0";

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

nlohmann::json figure_to_json(const Figure& f);
Figure figure_from_json(const nlohmann::json& j);

/// Catalog file: {"figures": {"name": <figure>, ...}}.
std::unordered_map<std::string, Figure> catalog_from_json(const nlohmann::json& j);

nlohmann::json universe_json(const RegionUniverse& u, const std::vector<Constraint>& constraints);
nlohmann::json certificate_json(const RegionUniverse& u, const std::vector<Constraint>& constraints,
                                const Target& target, const Certificate& cert, bool verified);
nlohmann::json witness_json(const RegionUniverse& u, const Target& target, const Witness& witness,
                            bool verified);
nlohmann::json entropy_table_json(const RegionUniverse& u, const EntropyTable& table);
nlohmann::json scan_report_json(const RegionUniverse& u, const ScanReport& report);
nlohmann::json decomposition_json(const DecompositionReport& report);
nlohmann::json increment_json(const IncrementReport& report);
nlohmann::json search_result_json(const SearchResult& result, const SearchConfig& cfg);

/// Builds a state model from a model-spec JSON document:
///   {"kind":"iid","alphabet":2,"probs":[..],"sites":N,"topology":"ring"|"line"|"torus","dims":[m1,m2]}
///   {"kind":"markov","alphabet":a,"transition":[[..],..],"sites":N,"stationary":[..]?}
///   {"kind":"table","alphabet":a,"sites":N,"topology":..,"dims":..,"probs":[..]}
///   {"kind":"ghz","sites":N}
///   {"kind":"qrandom","sites":N,"seed":S}
/// `group` controls the symmetrization applied to table/qrandom states.
std::unique_ptr<StateModel> model_from_json(const nlohmann::json& j, SymmetryKind group);

/// Parses a CLI target spec against a universe:
///   mean:X<=Y | entropy:X<=Y | mean-step:K | avg:NAME | general:{...} |
///   boxes | lshape | plank | three | zero
Target target_from_spec(const RegionUniverse& u, const std::string& spec);

/// Every run emits one of these; replaying the recorded invocation
/// reproduces the digested output byte for byte.
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> inputs;
    nlohmann::json parameters;
    uint64_t seed = 0;
    std::string output_digest;
};

nlohmann::json manifest_json(const RunManifest& m);

}  // namespace entrolab::io
