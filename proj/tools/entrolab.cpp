#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "entrolab/corrent.hpp"
#include "entrolab/io.hpp"
#include "entrolab/models.hpp"
#include "entrolab/prover.hpp"
#include "entrolab/search.hpp"
#include "entrolab/universe.hpp"

using nlohmann::json;
using namespace entrolab;

namespace {

// ---------------------------------------------------------------------------
// shared option blocks

struct UniverseOptions {
    std::string universe_file;
    int chain = 0;
    int ring = 0;
    std::string boxes;
    std::string subsets;
    std::vector<std::string> seeds;
    std::string window;
    std::string group;
    int max_cells = 12;
    int max_rounds = 8;
    std::string catalog_file;
};

void add_universe_options(CLI::App* cmd, UniverseOptions& o) {
    cmd->add_option("--universe", o.universe_file, "abstract universe JSON file");
    cmd->add_option("--chain", o.chain, "1-D chain universe with segment lengths 1..N");
    cmd->add_option("--ring", o.ring, "abstract ring universe with arcs 1..N");
    cmd->add_option("--boxes", o.boxes, "box universe inside WxH (needs --group)");
    cmd->add_option("--subsets", o.subsets, "subset universe of a catalog figure or figure file");
    cmd->add_option("--seeds", o.seeds, "closure seeds: catalog names or figure files (needs --window, --group)");
    cmd->add_option("--window", o.window, "closure window extents, e.g. 3x2");
    cmd->add_option("--group", o.group, "symmetry group: none|translations|full");
    cmd->add_option("--max-cells", o.max_cells, "closure cell budget per figure");
    cmd->add_option("--max-rounds", o.max_rounds, "closure round budget");
    cmd->add_option("--catalog", o.catalog_file, "figure catalog JSON (defaults to the built-in catalog)");
}

std::vector<int> parse_extents(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) out.push_back(std::stoi(part));
    if (out.empty()) throw std::invalid_argument("bad extents '" + text + "'");
    return out;
}

Figure lookup_figure(const std::string& name, const UniverseOptions& o) {
    if (!o.catalog_file.empty()) {
        auto catalog = io::catalog_from_json(json::parse(io::read_file(o.catalog_file)));
        auto it = catalog.find(name);
        if (it != catalog.end()) return it->second;
    } else {
        for (const auto& [n, fig] : builtin_catalog())
            if (n == name) return fig;
    }
    // otherwise treat as a figure file
    return io::figure_from_json(json::parse(io::read_file(name)));
}

SymmetryKind require_group(const UniverseOptions& o) {
    if (o.group.empty())
        throw std::invalid_argument("this universe construction needs an explicit --group "
                                    "(none|translations|full)");
    return symmetry_from_string(o.group);
}

RegionUniverse build_universe(const UniverseOptions& o, std::vector<std::string>& inputs) {
    int sources = (!o.universe_file.empty()) + (o.chain > 0) + (o.ring > 0) + (!o.boxes.empty()) +
                  (!o.subsets.empty()) + (!o.seeds.empty());
    if (sources != 1)
        throw std::invalid_argument("choose exactly one universe source "
                                    "(--universe | --chain | --ring | --boxes | --subsets | --seeds)");
    if (!o.universe_file.empty()) {
        inputs.push_back(o.universe_file);
        return load_abstract_universe(io::read_file(o.universe_file));
    }
    if (o.chain > 0) return chain_universe(o.chain);
    if (o.ring > 0) return ring_universe(o.ring);
    if (!o.boxes.empty()) return box_universe(parse_extents(o.boxes), require_group(o));
    if (!o.subsets.empty()) return subset_universe(normalize_to_origin(lookup_figure(o.subsets, o)));
    if (o.window.empty()) throw std::invalid_argument("--seeds needs --window");
    std::vector<Figure> seeds;
    for (const std::string& s : o.seeds) seeds.push_back(lookup_figure(s, o));
    CloseOptions opts;
    opts.max_cells = o.max_cells;
    opts.max_rounds = o.max_rounds;
    return close_universe(seeds, parse_extents(o.window), require_group(o), opts);
}

// ---------------------------------------------------------------------------
// output plumbing

struct OutputSink {
    std::string out_file;
    std::string manifest_file;

    void emit(const std::string& payload, io::RunManifest manifest) const {
        manifest.output_digest = io::digest_hex(payload);
        if (out_file.empty())
            std::cout << payload << "\n";
        else
            io::write_file(out_file, payload + "\n");
        std::string m = io::manifest_json(manifest).dump();
        if (manifest_file.empty())
            std::cerr << m << "\n";
        else
            io::write_file(manifest_file, m + "\n");
    }
};

void add_output_options(CLI::App* cmd, OutputSink& sink) {
    cmd->add_option("--out", sink.out_file, "write the primary JSON output here instead of stdout");
    cmd->add_option("--manifest", sink.manifest_file, "write the run manifest here instead of stderr");
}

json universe_params(const UniverseOptions& o) {
    return json{{"universe", o.universe_file}, {"chain", o.chain},     {"ring", o.ring},
                {"boxes", o.boxes},            {"subsets", o.subsets}, {"seeds", o.seeds},
                {"window", o.window},          {"group", o.group},     {"max_cells", o.max_cells},
                {"max_rounds", o.max_rounds}};
}

std::unique_ptr<StateModel> load_model(const std::string& spec, SymmetryKind group,
                                       std::vector<std::string>& inputs) {
    if (!spec.empty() && spec.front() == '{') return io::model_from_json(json::parse(spec), group);
    inputs.push_back(spec);
    return io::model_from_json(json::parse(io::read_file(spec)), group);
}

// ---------------------------------------------------------------------------
// subcommands

std::vector<Rational> parse_rational_sides(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) out.push_back(Rational::parse(part));
    if (out.empty()) throw std::invalid_argument("bad box sides '" + text + "'");
    return out;
}

int cmd_prove(const UniverseOptions& uo, const OutputSink& sink, std::string target_spec,
              const std::string& box_pair, bool no_pos, bool pretty) {
    std::vector<std::string> inputs;
    RegionUniverse u;
    Target target;
    if (!box_pair.empty()) {
        // continuum boxes with rational sides, rescaled onto the lattice
        if (!target_spec.empty())
            throw std::invalid_argument("--box-pair defines its own target; drop --target");
        auto arrow = box_pair.find("<=");
        if (arrow == std::string::npos)
            throw std::invalid_argument("--box-pair needs the form AxB<=CxD");
        ScaledBoxPair pair = scale_rational_boxes(parse_rational_sides(box_pair.substr(0, arrow)),
                                                  parse_rational_sides(box_pair.substr(arrow + 2)));
        std::vector<int> bounds;
        for (const Cell& c : pair.outer.cells)
            for (size_t i = 0; i < c.size(); ++i) {
                if (bounds.size() <= i) bounds.resize(i + 1, 0);
                bounds[i] = std::max(bounds[i], c[i] + 1);
            }
        u = box_universe(bounds, require_group(uo));
        target = target_mean_monotone(u.find_class(pair.inner), u.find_class(pair.outer), u);
        target.description += " (continuum pair scaled by " + std::to_string(pair.scale) + ")";
        target_spec = "box-pair:" + box_pair;
    } else {
        if (target_spec.empty()) throw std::invalid_argument("--target is required");
        u = build_universe(uo, inputs);
        target = io::target_from_spec(u, target_spec);
    }
    auto constraints = generate_constraints(u);
    if (no_pos) constraints = without_positivity(std::move(constraints));
    ProveResult result = prove(constraints, static_cast<int>(u.classes.size()), target);

    json payload;
    if (result.derivable) {
        bool ok = verify_certificate(constraints, target, result.certificate);
        payload = io::certificate_json(u, constraints, target, result.certificate, ok);
        if (pretty) {
            std::vector<std::string> names;
            for (const auto& c : u.classes) names.push_back(c.name);
            std::cerr << certificate_pretty(constraints, target, result.certificate, names);
        }
    } else {
        bool ok = verify_witness(constraints, target, result.witness);
        payload = io::witness_json(u, target, result.witness, ok);
    }
    payload["universe"] = json{{"classes", u.classes.size()},
                               {"constraints", constraints.size()},
                               {"complete", u.complete}};

    io::RunManifest manifest;
    manifest.subcommand = "prove";
    manifest.inputs = inputs;
    manifest.parameters = universe_params(uo);
    manifest.parameters["target"] = target_spec;
    manifest.parameters["no_pos"] = no_pos;
    sink.emit(payload.dump(2), manifest);
    return result.derivable ? 0 : 3;
}

int cmd_scan(const UniverseOptions& uo, const OutputSink& sink, const std::string& csv_file) {
    std::vector<std::string> inputs;
    RegionUniverse u = build_universe(uo, inputs);
    auto constraints = generate_constraints(u);
    ScanReport report = scan(u, constraints, nested_pairs(u));
    json payload = io::scan_report_json(u, report);
    payload["universe"] = json{{"classes", u.classes.size()},
                               {"constraints", constraints.size()},
                               {"complete", u.complete},
                               {"budget", json{{"max_cells", uo.max_cells}, {"max_rounds", uo.max_rounds}}}};
    if (!csv_file.empty()) {
        std::ostringstream csv;
        csv << "a,b,result\n";
        for (const ScanPairResult& p : report.pairs)
            csv << u.name_of(p.a) << "," << u.name_of(p.b) << ","
                << (p.derivable ? "derivable" : "unknown") << "\n";
        io::write_file(csv_file, csv.str());
    }
    io::RunManifest manifest;
    manifest.subcommand = "scan";
    manifest.inputs = inputs;
    manifest.parameters = universe_params(uo);
    manifest.parameters["emit_csv"] = csv_file;
    sink.emit(payload.dump(2), manifest);
    return 0;
}

bool figure_is_box(const Figure& f) {
    std::vector<int> lo = f.cells.front(), hi = f.cells.front();
    for (const Cell& c : f.cells)
        for (int i = 0; i < f.nu; ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
    long box_cells = 1;
    for (int i = 0; i < f.nu; ++i) box_cells *= hi[i] - lo[i] + 1;
    return box_cells == f.volume();
}

int cmd_verify_models(const UniverseOptions& uo, const OutputSink& sink, const std::string& model_spec,
                      double tol, const std::string& corrupt, bool bits) {
    std::vector<std::string> inputs;
    RegionUniverse u = build_universe(uo, inputs);
    auto constraints = generate_constraints(u);
    SymmetryKind group = u.group;
    auto model = load_model(model_spec, group, inputs);
    EmbeddingMap emb = build_embedding(u, model->geometry());
    EntropyTable table = entropy_table(*model, u, emb);

    if (!corrupt.empty()) {
        auto eq = corrupt.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--corrupt needs CLASS=VALUE");
        table.values[u.require_class(corrupt.substr(0, eq))] = std::stod(corrupt.substr(eq + 1));
    }

    const Topology topo = model->geometry().topo;
    AxiomCheckReport axioms = check_axioms(table, u, constraints);
    std::string worst_instance;
    {
        int worst = -1;
        double margin = 0.0;
        auto consider = [&](int idx, double m) {
            if (idx >= 0 && (worst < 0 || m < margin)) { worst = idx; margin = m; }
        };
        consider(axioms.worst_pos, axioms.min_margin_pos);
        consider(axioms.worst_sa, axioms.min_margin_sa);
        consider(axioms.worst_ssa, axioms.min_margin_ssa);
        if (worst >= 0)
            worst_instance = std::string(to_string(constraints[worst].kind)) + " " +
                             constraints[worst].provenance;
    }
    double spread = u.placements.empty() ? 0.0 : max_congruence_spread(*model, u);

    // monotonicity on theorem-backed pairs: boxes/segments on lines and tori,
    // arcs on rings; rings check the mean form only (a pure total ring state
    // may have mixed subregions)
    double worst_mean = 0.0, worst_entropy = 0.0;
    std::string worst_mean_pair, worst_entropy_pair;
    for (const auto& [a, b] : nested_pairs(u)) {
        bool theorem_pair = u.is_abstract
                                ? (u.classes[a].arc_length && u.classes[b].arc_length)
                                : (figure_is_box(u.classes[a].key.rep) && figure_is_box(u.classes[b].key.rep));
        if (!theorem_pair) continue;
        double mean_margin = evaluate_target(target_mean_monotone(a, b, u), table);
        if (mean_margin < worst_mean) {
            worst_mean = mean_margin;
            worst_mean_pair = u.name_of(a) + "<" + u.name_of(b);
        }
        if (topo != Topology::ring) {
            double ent_margin = table.values[b] - table.values[a];
            if (ent_margin < worst_entropy) {
                worst_entropy = ent_margin;
                worst_entropy_pair = u.name_of(a) + "<" + u.name_of(b);
            }
        }
    }
    PurityReport purity = purity_propagation(table, u, topo, tol);

    bool pass = axioms.ok(tol) && spread <= tol && worst_mean >= -tol && worst_entropy >= -tol &&
                (!purity.applicable || purity.pass);

    // checks run in nats; --bits rescales the displayed numbers only
    const double unit = bits ? 1.0 / std::log(2.0) : 1.0;
    json table_values = io::entropy_table_json(u, table)["entropies"];
    if (bits)
        for (auto& [key, value] : table_values.items()) value = value.get<double>() * unit;
    json payload{{"model", model->describe()},
                 {"units", bits ? "bits" : "nats"},
                 {"axioms", json{{"min_margin_pos", axioms.min_margin_pos * unit},
                                 {"min_margin_sa", axioms.min_margin_sa * unit},
                                 {"min_margin_ssa", axioms.min_margin_ssa * unit},
                                 {"worst_violation", axioms.worst_violation() * unit},
                                 {"worst_instance", worst_instance}}},
                 {"congruence_spread", spread * unit},
                 {"worst_mean_margin", worst_mean * unit},
                 {"worst_mean_pair", worst_mean_pair},
                 {"worst_entropy_margin", worst_entropy * unit},
                 {"worst_entropy_pair", worst_entropy_pair},
                 {"entropy_monotonicity",
                  topo == Topology::ring
                      ? "skipped on rings: a pure total state may have mixed subregions"
                      : "checked on nested box pairs"},
                 {"purity", json{{"applicable", purity.applicable},
                                 {"triggered", purity.triggered},
                                 {"pass", purity.pass},
                                 {"note", purity.note}}},
                 {"table", table_values},
                 {"tol", tol},
                 {"pass", pass}};

    io::RunManifest manifest;
    manifest.subcommand = "verify-models";
    manifest.inputs = inputs;
    manifest.parameters = universe_params(uo);
    manifest.parameters["model"] = model_spec;
    manifest.parameters["tol"] = tol;
    manifest.parameters["corrupt"] = corrupt;
    sink.emit(payload.dump(2), manifest);
    return pass ? 0 : 2;
}

int cmd_decompose(const OutputSink& sink, const std::string& seq_json, const std::string& model_spec,
                  int n, std::optional<double> mean_limit, double tol, bool bits) {
    std::vector<std::string> inputs;
    std::vector<double> seq;
    if (!seq_json.empty()) {
        seq = json::parse(seq_json).get<std::vector<double>>();
    } else if (!model_spec.empty()) {
        if (n < 1) throw std::invalid_argument("--model needs --n");
        auto model = load_model(model_spec, SymmetryKind::translations, inputs);
        for (int k = 1; k <= n; ++k) {
            std::vector<int> sites(k);
            for (int i = 0; i < k; ++i) sites[i] = i;
            seq.push_back(model->region_entropy(sites));
        }
    } else {
        throw std::invalid_argument("decompose needs --seq or --model");
    }

    DecompositionReport report = decompose(seq);
    json payload = io::decomposition_json(report);
    payload["sequence"] = seq;
    payload["units"] = bits ? "bits" : "nats";
    if (bits) {
        const double unit = 1.0 / std::log(2.0);
        for (const char* key : {"index_of_correlation", "min_correlation_entropy"})
            payload[key] = payload[key].get<double>() * unit;
        for (const char* key : {"correlation_entropies", "reconstructed", "sequence"})
            for (auto& v : payload[key]) v = v.get<double>() * unit;
    }
    if (seq.size() >= 2) {
        bool weakened = false;
        double limit;
        if (mean_limit) {
            limit = *mean_limit;
        } else {
            limit = seq[0];
            for (size_t k = 1; k < seq.size(); ++k) limit = std::min(limit, seq[k] / static_cast<double>(k + 1));
            weakened = true;  // best upper bound available from the data itself
        }
        IncrementReport inc = increment_bound_check(seq, limit, tol);
        inc.weakened = weakened;
        json increments = io::increment_json(inc);
        if (bits) {
            const double unit = 1.0 / std::log(2.0);
            for (auto& v : increments["increments"]) v = v.get<double>() * unit;
            increments["min_increment"] = increments["min_increment"].get<double>() * unit;
            increments["min_margin_vs_limit"] = increments["min_margin_vs_limit"].get<double>() * unit;
        }
        payload["increments"] = increments;
        payload["mean_limit"] = bits ? limit / std::log(2.0) : limit;
    }

    io::RunManifest manifest;
    manifest.subcommand = "decompose";
    manifest.inputs = inputs;
    manifest.parameters = json{{"seq", seq_json}, {"model", model_spec}, {"n", n}, {"tol", tol}};
    if (mean_limit) manifest.parameters["mean_limit"] = *mean_limit;
    sink.emit(payload.dump(2), manifest);
    return 0;
}

int cmd_search(const UniverseOptions& uo, const OutputSink& sink, const std::string& target_spec,
               SearchConfig cfg, const std::string& topology, const std::string& dims, int sites,
               const std::vector<std::string>& guard_derivable,
               const std::vector<std::string>& guard_disjunction, const std::string& csv_file) {
    std::vector<std::string> inputs;
    RegionUniverse u = build_universe(uo, inputs);
    cfg.family.topo = topology_from_string(topology);
    if (cfg.family.topo == Topology::torus) {
        auto d = parse_extents(dims);
        if (d.size() != 2) throw std::invalid_argument("--dims needs WxH");
        cfg.family.m1 = d[0];
        cfg.family.m2 = d[1];
        cfg.family.sites = d[0] * d[1];
    } else {
        cfg.family.sites = sites;
    }
    cfg.family.group = u.is_abstract ? SymmetryKind::translations : u.group;

    Target target = io::target_from_spec(u, target_spec);
    GuardSet guards;
    for (const std::string& g : guard_derivable) guards.derivable.push_back(io::target_from_spec(u, g));
    for (const std::string& g : guard_disjunction) guards.disjunction.push_back(io::target_from_spec(u, g));

    SearchResult result = minimize_margin(u, target, cfg, guards);
    if (!csv_file.empty()) {
        std::ostringstream csv;
        csv << "restart,best_margin\n";
        for (size_t r = 0; r < result.restart_best.size(); ++r)
            csv << r << "," << result.restart_best[r] << "\n";
        io::write_file(csv_file, csv.str());
    }
    json payload = io::search_result_json(result, cfg);
    payload["target"] = target_spec;
    payload["label"] = "best found (heuristic; not a proof or refutation)";

    io::RunManifest manifest;
    manifest.subcommand = "search";
    manifest.inputs = inputs;
    manifest.parameters = universe_params(uo);
    manifest.parameters["target"] = target_spec;
    manifest.parameters["topology"] = topology;
    manifest.parameters["dims"] = dims;
    manifest.parameters["sites"] = sites;
    manifest.parameters["iterations"] = cfg.iterations;
    manifest.parameters["restarts"] = cfg.restarts;
    manifest.parameters["step"] = cfg.step;
    manifest.parameters["fd_step"] = cfg.fd_step;
    manifest.seed = cfg.seed;
    sink.emit(payload.dump(2), manifest);
    return 0;
}

int cmd_show(const UniverseOptions& uo, const std::string& figure_name, bool key) {
    Figure f = lookup_figure(figure_name, uo);
    if (key)
        std::cout << canonicalize(f, uo.group.empty() ? SymmetryKind::full : symmetry_from_string(uo.group)).text
                  << "\n";
    else
        std::cout << render_ascii(f);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entrolab: entropy-inequality workbench for lattice regions"};
    app.require_subcommand(1);

    // prove
    auto* prove_cmd = app.add_subcommand("prove", "derive a target inequality or report a witness");
    UniverseOptions prove_uo;
    OutputSink prove_sink;
    std::string prove_target;
    bool prove_no_pos = false, prove_pretty = false;
    add_universe_options(prove_cmd, prove_uo);
    add_output_options(prove_cmd, prove_sink);
    std::string prove_box_pair;
    prove_cmd->add_option("--target", prove_target, "target spec");
    prove_cmd->add_option("--box-pair", prove_box_pair,
                          "nested continuum boxes with rational sides, e.g. '3/2x1<=2x5/2'");
    prove_cmd->add_flag("--no-pos", prove_no_pos, "drop positivity rows before proving");
    prove_cmd->add_flag("--pretty", prove_pretty, "print a human-readable proof to stderr");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "classify every nested pair and average-subfigure bound");
    UniverseOptions scan_uo;
    OutputSink scan_sink;
    std::string scan_csv;
    add_universe_options(scan_cmd, scan_uo);
    add_output_options(scan_cmd, scan_sink);
    scan_cmd->add_option("--emit-csv", scan_csv, "also write the pair table as CSV");

    // verify-models
    auto* vm_cmd = app.add_subcommand("verify-models", "check a concrete state against the axioms");
    UniverseOptions vm_uo;
    OutputSink vm_sink;
    std::string vm_model, vm_corrupt;
    double vm_tol = 1e-9;
    add_universe_options(vm_cmd, vm_uo);
    add_output_options(vm_cmd, vm_sink);
    vm_cmd->add_option("--model", vm_model, "model spec file or inline JSON")->required();
    vm_cmd->add_option("--tol", vm_tol, "tolerance");
    vm_cmd->add_option("--corrupt", vm_corrupt, "CLASS=VALUE fault injection into the entropy table");
    bool vm_bits = false;
    vm_cmd->add_flag("--bits", vm_bits, "display entropies in bits (checks still run in nats)");

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "correlation-entropy decomposition of S(1..n)");
    OutputSink dec_sink;
    std::string dec_seq, dec_model;
    int dec_n = 0;
    double dec_tol = 1e-9;
    std::optional<double> dec_limit;
    double dec_limit_value = 0.0;
    add_output_options(dec_cmd, dec_sink);
    dec_cmd->add_option("--seq", dec_seq, "entropy sequence as a JSON array");
    dec_cmd->add_option("--model", dec_model, "model spec file or inline JSON");
    dec_cmd->add_option("--n", dec_n, "sequence length when using --model");
    auto* limit_opt = dec_cmd->add_option("--mean-limit", dec_limit_value,
                                          "limiting mean entropy for the increment check");
    dec_cmd->add_option("--tol", dec_tol, "tolerance");
    bool dec_bits = false;
    dec_cmd->add_flag("--bits", dec_bits, "display entropies in bits (checks still run in nats)");

    // search
    auto* search_cmd = app.add_subcommand("search", "minimize a target margin over classical states");
    UniverseOptions search_uo;
    OutputSink search_sink;
    std::string search_target, search_topology = "torus", search_dims = "3x3";
    int search_sites = 6;
    SearchConfig search_cfg;
    std::vector<std::string> search_guard_derivable, search_guard_disjunction;
    add_universe_options(search_cmd, search_uo);
    add_output_options(search_cmd, search_sink);
    search_cmd->add_option("--target", search_target, "target spec")->required();
    search_cmd->add_option("--topology", search_topology, "ring|torus");
    search_cmd->add_option("--dims", search_dims, "torus extents WxH");
    search_cmd->add_option("--sites", search_sites, "ring length");
    search_cmd->add_option("--alphabet", search_cfg.family.alphabet, "alphabet size");
    search_cmd->add_option("--iters", search_cfg.iterations, "descent steps per restart");
    search_cmd->add_option("--restarts", search_cfg.restarts, "random restarts");
    search_cmd->add_option("--step", search_cfg.step, "initial descent step");
    search_cmd->add_option("--fd-step", search_cfg.fd_step, "finite-difference probe step");
    search_cmd->add_option("--threads", search_cfg.threads, "worker threads (speed only)");
    search_cmd->add_option("--seed", search_cfg.seed, "random seed")->required();
    search_cmd->add_option("--guard-derivable", search_guard_derivable,
                           "target that must stay non-negative at every state");
    search_cmd->add_option("--guard-disjunction", search_guard_disjunction,
                           "targets whose maximum must stay non-negative at every state");
    std::string search_csv;
    search_cmd->add_option("--emit-csv", search_csv, "also write the per-restart margins as CSV");

    // show
    auto* show_cmd = app.add_subcommand("show", "render a figure as ASCII art");
    UniverseOptions show_uo;
    std::string show_figure;
    bool show_key = false;
    add_universe_options(show_cmd, show_uo);
    show_cmd->add_option("--figure", show_figure, "catalog name or figure file")->required();
    show_cmd->add_flag("--key", show_key, "print the canonical key instead of the picture");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prove_cmd)
            return cmd_prove(prove_uo, prove_sink, prove_target, prove_box_pair, prove_no_pos, prove_pretty);
        if (*scan_cmd) return cmd_scan(scan_uo, scan_sink, scan_csv);
        if (*vm_cmd) return cmd_verify_models(vm_uo, vm_sink, vm_model, vm_tol, vm_corrupt, vm_bits);
        if (*dec_cmd) {
            if (limit_opt->count() > 0) dec_limit = dec_limit_value;
            return cmd_decompose(dec_sink, dec_seq, dec_model, dec_n, dec_limit, dec_tol, dec_bits);
        }
        if (*search_cmd)
            return cmd_search(search_uo, search_sink, search_target, search_cfg, search_topology,
                              search_dims, search_sites, search_guard_derivable, search_guard_disjunction,
                              search_csv);
        if (*show_cmd) return cmd_show(show_uo, show_figure, show_key);
    } catch (const SoundnessError& e) {
        std::cerr << "soundness failure: " << e.what() << "\n" << e.dump() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
