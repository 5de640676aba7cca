#include "entrolab/io.hpp"

#include <fstream>
#include <sstream>

namespace entrolab::io {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << contents;
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(std::string_view data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

json figure_to_json(const Figure& f) {
    json cells = json::array();
    for (const Cell& c : f.cells) cells.push_back(c);
    return json{{"nu", f.nu}, {"cells", cells}};
}

Figure figure_from_json(const json& j) {
    if (!j.contains("nu") || !j.contains("cells"))
        throw std::invalid_argument("figure: needs 'nu' and 'cells'");
    std::vector<Cell> cells;
    for (const auto& c : j.at("cells")) cells.push_back(c.get<Cell>());
    return make_figure(j.at("nu").get<int>(), std::move(cells));
}

std::unordered_map<std::string, Figure> catalog_from_json(const json& j) {
    if (!j.contains("figures") || !j.at("figures").is_object())
        throw std::invalid_argument("catalog: needs a 'figures' object");
    std::unordered_map<std::string, Figure> out;
    for (const auto& [name, fig] : j.at("figures").items()) out.emplace(name, figure_from_json(fig));
    return out;
}

namespace {

json form_json(const LinearForm& form, const RegionUniverse& u) {
    json coeffs = json::object();
    for (const auto& [cls, c] : form) coeffs[u.name_of(cls)] = c.str();
    return coeffs;
}

}  // namespace

json universe_json(const RegionUniverse& u, const std::vector<Constraint>& constraints) {
    json classes = json::array();
    for (const UniverseClass& c : u.classes) {
        json e{{"name", c.name}, {"vol", c.volume.str()}};
        if (!u.is_abstract) e["key"] = c.key.text;
        classes.push_back(e);
    }
    json cons = json::array();
    for (const Constraint& g : constraints)
        cons.push_back(json{{"kind", to_string(g.kind)},
                            {"coeffs", form_json(g.coeffs, u)},
                            {"provenance", g.provenance}});
    return json{{"group", to_string(u.group)},
                {"abstract", u.is_abstract},
                {"complete", u.complete},
                {"classes", classes},
                {"constraints", cons}};
}

json certificate_json(const RegionUniverse& u, const std::vector<Constraint>& constraints,
                      const Target& target, const Certificate& cert, bool verified) {
    json mults = json::array();
    for (const auto& [idx, lambda] : cert.multipliers)
        mults.push_back(json{{"constraint", idx},
                             {"kind", to_string(constraints[idx].kind)},
                             {"coeffs", form_json(constraints[idx].coeffs, u)},
                             {"lambda", lambda.str()}});
    return json{{"result", "derivable"},
                {"target", json{{"coeffs", form_json(target.coeffs, u)}, {"description", target.description}}},
                {"multipliers", mults},
                {"verified", verified}};
}

json witness_json(const RegionUniverse& u, const Target& target, const Witness& witness, bool verified) {
    json values = json::object();
    for (size_t c = 0; c < witness.values.size(); ++c) values[u.name_of(static_cast<int>(c))] = witness.values[c].str();
    return json{{"result", "unknown-within-universe"},
                {"target", json{{"coeffs", form_json(target.coeffs, u)}, {"description", target.description}}},
                {"values", values},
                {"verified", verified}};
}

json entropy_table_json(const RegionUniverse& u, const EntropyTable& table) {
    json values = json::object();
    for (size_t c = 0; c < table.values.size(); ++c) {
        const UniverseClass& cls = u.classes[c];
        std::string key = u.is_abstract ? cls.name : cls.key.text;
        values[key] = table.values[c];
    }
    return json{{"entropies", values}};
}

json scan_report_json(const RegionUniverse& u, const ScanReport& report) {
    json pairs = json::array();
    for (const ScanPairResult& p : report.pairs)
        pairs.push_back(json{{"a", u.name_of(p.a)},
                             {"b", u.name_of(p.b)},
                             {"result", p.derivable ? "derivable" : "unknown"}});
    json averages = json::array();
    for (const ScanAverageResult& a : report.averages)
        averages.push_back(json{{"figure", u.name_of(a.figure)},
                                {"result", !a.evaluable  ? "not-evaluable"
                                           : a.derivable ? "derivable"
                                                         : "unknown"}});
    return json{{"pairs", pairs}, {"averages", averages}};
}

json decomposition_json(const DecompositionReport& r) {
    return json{{"index_of_correlation", r.index_n},
                {"correlation_entropies", r.correlation},
                {"reconstructed", r.reconstructed},
                {"max_reconstruction_error", r.max_reconstruction_error},
                {"index_identity_error", r.index_identity_error},
                {"min_correlation_entropy", r.min_correlation}};
}

json increment_json(const IncrementReport& r) {
    return json{{"increments", r.increments},
                {"min_increment", r.min_increment},
                {"min_margin_vs_limit", r.min_margin_vs_limit},
                {"nonnegative_ok", r.nonnegative_ok},
                {"limit_ok", r.limit_ok},
                {"weakened", r.weakened}};
}

json search_result_json(const SearchResult& result, const SearchConfig& cfg) {
    return json{{"min_margin", result.min_margin},
                {"restart_best", result.restart_best},
                {"evaluations", result.evaluations},
                {"argmin_probs", result.argmin_probs},
                {"family", json{{"topology", to_string(cfg.family.topo)},
                                {"sites", cfg.family.sites},
                                {"dims", json::array({cfg.family.m1, cfg.family.m2})},
                                {"alphabet", cfg.family.alphabet},
                                {"group", to_string(cfg.family.group)}}},
                {"iterations", cfg.iterations},
                {"restarts", cfg.restarts},
                {"seed", cfg.seed}};
}

std::unique_ptr<StateModel> model_from_json(const json& j, SymmetryKind group) {
    if (!j.contains("kind")) throw std::invalid_argument("model spec: missing 'kind'");
    const std::string kind = j.at("kind").get<std::string>();

    auto topo_of = [&](const json& spec) {
        Topology t = topology_from_string(spec.value("topology", std::string("line")));
        int m1 = 0, m2 = 0;
        if (t == Topology::torus) {
            if (!spec.contains("dims")) throw std::invalid_argument("model spec: torus needs 'dims'");
            m1 = spec.at("dims").at(0).get<int>();
            m2 = spec.at("dims").at(1).get<int>();
        }
        return std::tuple<Topology, int, int>{t, m1, m2};
    };

    if (kind == "iid") {
        auto [topo, m1, m2] = topo_of(j);
        int sites = topo == Topology::torus ? m1 * m2 : j.at("sites").get<int>();
        auto probs = j.at("probs").get<std::vector<double>>();
        return classical_model(iid_table(static_cast<int>(probs.size()), sites, topo, m1, m2, probs));
    }
    if (kind == "markov") {
        int a = j.at("alphabet").get<int>();
        auto rows = j.at("transition");
        std::vector<double> t;
        for (const auto& row : rows)
            for (const auto& v : row) t.push_back(v.get<double>());
        std::optional<std::vector<double>> pi;
        if (j.contains("stationary")) pi = j.at("stationary").get<std::vector<double>>();
        int sites = j.value("sites", 16);
        return markov_model(make_markov(a, std::move(t), std::move(pi)), sites);
    }
    if (kind == "table") {
        auto [topo, m1, m2] = topo_of(j);
        ProbTable p;
        p.alphabet = j.at("alphabet").get<int>();
        p.sites = topo == Topology::torus ? m1 * m2 : j.at("sites").get<int>();
        p.topo = topo;
        p.m1 = m1;
        p.m2 = m2;
        p.probs = j.at("probs").get<std::vector<double>>();
        symmetrize(p, group);
        return classical_model(std::move(p));
    }
    if (kind == "ghz") return quantum_ring_model(ghz_state(j.at("sites").get<int>()));
    if (kind == "qrandom") {
        int sites = j.at("sites").get<int>();
        uint64_t seed = j.at("seed").get<uint64_t>();
        return quantum_ring_model(random_ring_state(sites, seed, group));
    }
    throw std::invalid_argument("model spec: unknown kind '" + kind + "'");
}

Target target_from_spec(const RegionUniverse& u, const std::string& spec) {
    auto mean_pair = [&](const std::string& big, const std::string& small) {
        return target_mean_monotone(u.require_class(small), u.require_class(big), u);
    };
    if (spec == "zero") return Target{{}, "zero target"};
    if (spec == "boxes") return mean_pair("L3", "domino");
    if (spec == "lshape") return mean_pair("L4", "L3");
    if (spec == "plank") return mean_pair("L4", "R3");
    if (spec == "three") {
        LinearForm v = {{u.require_class("R3"), Rational(1)},
                        {u.require_class("L3"), Rational(1, 3)},
                        {u.require_class("L4"), Rational(-1)}};
        return target_general(std::move(v), "S(R3) + S(L3)/3 - S(L4) >= 0", u);
    }
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad target spec '" + spec + "'");
    const std::string head = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);
    if (head == "mean" || head == "entropy") {
        auto arrow = body.find("<=");
        if (arrow == std::string::npos)
            throw std::invalid_argument("target spec '" + spec + "' needs the form " + head + ":X<=Y");
        const std::string x = body.substr(0, arrow), y = body.substr(arrow + 2);
        if (head == "mean") return mean_pair(x, y);
        return target_entropy_monotone(u.require_class(x), u.require_class(y), u);
    }
    if (head == "mean-step") {
        int k = std::stoi(body);
        return target_mean_monotone(u.require_class("chain" + std::to_string(k)),
                                    u.require_class("chain" + std::to_string(k + 1)), u);
    }
    if (head == "avg") return target_average_subfigures(u.require_class(body), u);
    if (head == "general") {
        json coeffs = json::parse(body);
        LinearForm v;
        for (const auto& [name, value] : coeffs.items()) {
            Rational c = value.is_string() ? Rational::parse(value.get<std::string>())
                                           : Rational(value.get<long>());
            v.emplace_back(u.require_class(name), c);
        }
        return target_general(std::move(v), "general: " + body, u);
    }
    throw std::invalid_argument("bad target spec '" + spec + "'");
}

json manifest_json(const RunManifest& m) {
    return json{{"tool", kVersion},
                {"subcommand", m.subcommand},
                {"inputs", m.inputs},
                {"parameters", m.parameters},
                {"seed", m.seed},
                {"output_digest", m.output_digest}};
}

}  // namespace entrolab::io
