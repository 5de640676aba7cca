#include "entrolab/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "entrolab/rng.hpp"
#include "json.hpp"

namespace entrolab {

namespace {

// The symmetric states form a simplex over configuration orbits; working in
// orbit coordinates keeps every iterate exactly invariant under the group.
struct OrbitSpace {
    ModelFamily family;
    size_t n_configs = 0;
    std::vector<int> orbit_of;      // config -> orbit
    std::vector<double> orbit_size; // configs per orbit
    int n_orbits = 0;

    explicit OrbitSpace(const ModelFamily& fam) : family(fam) {
        ProbTable shape;
        shape.alphabet = fam.alphabet;
        shape.sites = fam.sites;
        shape.topo = fam.topo;
        shape.m1 = fam.m1;
        shape.m2 = fam.m2;
        if (fam.topo == Topology::line)
            throw std::invalid_argument("search: model family must be a ring or torus");
        n_configs = 1;
        for (int s = 0; s < fam.sites; ++s) {
            n_configs *= static_cast<size_t>(fam.alphabet);
            if (n_configs > (1u << 20)) throw std::invalid_argument("search: state space exceeds the size cap");
        }

        auto perms = table_automorphisms(shape, fam.group);
        std::vector<size_t> stride(fam.sites);
        size_t v = 1;
        for (int s = 0; s < fam.sites; ++s, v *= fam.alphabet) stride[s] = v;

        // orbit representative = smallest image over the group
        std::vector<size_t> rep(n_configs);
        for (size_t cfg = 0; cfg < n_configs; ++cfg) rep[cfg] = cfg;
        for (const auto& perm : perms) {
            for (size_t cfg = 0; cfg < n_configs; ++cfg) {
                size_t out = 0, rest = cfg;
                for (int s = 0; s < fam.sites; ++s) {
                    out += rest % fam.alphabet * stride[perm[s]];
                    rest /= fam.alphabet;
                }
                rep[cfg] = std::min(rep[cfg], out);
            }
        }
        // stabilize: map to the representative's representative until fixed
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t cfg = 0; cfg < n_configs; ++cfg)
                if (rep[rep[cfg]] < rep[cfg]) {
                    rep[cfg] = rep[rep[cfg]];
                    changed = true;
                }
        }
        orbit_of.assign(n_configs, -1);
        for (size_t cfg = 0; cfg < n_configs; ++cfg) {
            if (rep[cfg] == cfg) {
                orbit_of[cfg] = n_orbits++;
                orbit_size.push_back(0.0);
            }
        }
        for (size_t cfg = 0; cfg < n_configs; ++cfg) {
            orbit_of[cfg] = orbit_of[rep[cfg]];
            orbit_size[orbit_of[cfg]] += 1.0;
        }
    }
};

// Per-class marginalization matrix in orbit coordinates:
// q[bucket] = sum_o w[o] * count[o * n_buckets + bucket].
struct ClassMarginal {
    int n_buckets = 0;
    std::vector<double> count;

    ClassMarginal() = default;
    ClassMarginal(const OrbitSpace& space, const std::vector<int>& sites) {
        const int a = space.family.alphabet;
        n_buckets = 1;
        for (size_t i = 0; i < sites.size(); ++i) n_buckets *= a;
        count.assign(static_cast<size_t>(space.n_orbits) * n_buckets, 0.0);
        std::vector<size_t> stride(space.family.sites);
        size_t v = 1;
        for (int s = 0; s < space.family.sites; ++s, v *= a) stride[s] = v;
        for (size_t cfg = 0; cfg < space.n_configs; ++cfg) {
            size_t bucket = 0, mult = 1;
            for (int s : sites) {
                bucket += (cfg / stride[s]) % a * mult;
                mult *= a;
            }
            count[static_cast<size_t>(space.orbit_of[cfg]) * n_buckets + bucket] += 1.0;
        }
    }

    double entropy(const std::vector<double>& w) const {
        double h = 0.0;
        const int nb = n_buckets;
        for (int b = 0; b < nb; ++b) {
            double q = 0.0;
            for (size_t o = 0; o < w.size(); ++o) q += w[o] * count[o * nb + b];
            if (q > 0.0) h -= q * std::log(q);
        }
        return h;
    }
};

struct Evaluator {
    const OrbitSpace& space;
    std::vector<ClassMarginal> marginals;       // one per involved class
    std::vector<int> class_slot;                // class index -> marginal slot (-1 unused)
    const Target& target;
    const GuardSet& guards;

    Evaluator(const OrbitSpace& sp, const RegionUniverse& u, const EmbeddingMap& emb, const Target& t,
              const GuardSet& g)
        : space(sp), target(t), guards(g) {
        class_slot.assign(u.classes.size(), -1);
        auto need = [&](const LinearForm& form) {
            for (const auto& [cls, coeff] : form)
                if (class_slot[cls] < 0) {
                    class_slot[cls] = static_cast<int>(marginals.size());
                    marginals.emplace_back(space, emb[cls]);
                }
        };
        need(t.coeffs);
        for (const Target& gt : g.derivable) need(gt.coeffs);
        for (const Target& gt : g.disjunction) need(gt.coeffs);
    }

    double margin_of(const LinearForm& form, const std::vector<double>& entropies) const {
        double m = 0.0;
        for (const auto& [cls, coeff] : form) m += coeff.to_double() * entropies[class_slot[cls]];
        return m;
    }

    // Evaluates the target margin and enforces the guards; throws
    // SoundnessError on any guard violation.
    double operator()(const std::vector<double>& w) const {
        std::vector<double> entropies(marginals.size());
        for (size_t i = 0; i < marginals.size(); ++i) entropies[i] = marginals[i].entropy(w);
        for (const Target& g : guards.derivable) {
            double m = margin_of(g.coeffs, entropies);
            if (m < -guards.tol)
                throw SoundnessError("derivable target violated during search: " + g.description,
                                     dump(w, g.description, m));
        }
        if (!guards.disjunction.empty()) {
            double best = -1e300;
            for (const Target& g : guards.disjunction) best = std::max(best, margin_of(g.coeffs, entropies));
            if (best < -guards.tol)
                throw SoundnessError("disjunction guard violated during search", dump(w, "disjunction", best));
        }
        return margin_of(target.coeffs, entropies);
    }

    std::string dump(const std::vector<double>& w, const std::string& what, double margin) const {
        nlohmann::json j;
        j["guard"] = what;
        j["margin"] = margin;
        std::vector<double> probs(space.n_configs);
        for (size_t cfg = 0; cfg < space.n_configs; ++cfg) probs[cfg] = w[space.orbit_of[cfg]];
        j["probs"] = probs;
        return j.dump();
    }
};

void project(std::vector<double>& w, const OrbitSpace& space) {
    double total = 0.0;
    for (size_t o = 0; o < w.size(); ++o) {
        if (w[o] < 0.0) w[o] = 0.0;
        total += w[o] * space.orbit_size[o];
    }
    if (total <= 0.0) {
        const double uniform = 1.0 / static_cast<double>(space.n_configs);
        std::fill(w.begin(), w.end(), uniform);
        return;
    }
    for (double& v : w) v /= total;
}

struct RestartOutcome {
    double best_margin = 0.0;
    std::vector<double> best_w;
    uint64_t evals = 0;
};

RestartOutcome run_restart(const OrbitSpace& space, const Evaluator& eval, const SearchConfig& cfg,
                           int restart_index) {
    Rng rng(cfg.seed ^ (0x9E3779B97F4A7C15ull * static_cast<uint64_t>(restart_index + 1)));
    const int n = space.n_orbits;
    std::vector<double> w(n);
    for (double& v : w) v = rng.uniform_pos();
    project(w, space);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

    RestartOutcome out;
    double current = eval(w);
    out.evals = 1;
    out.best_margin = current;
    out.best_w = w;

    double step = cfg.step;
    std::vector<double> probe = w, trial = w;
    for (int it = 0; it < cfg.iterations; ++it) {
        const int o = order[it % n];
        probe = w;
        probe[o] += cfg.fd_step;
        project(probe, space);
        double plus = eval(probe);
        probe = w;
        probe[o] -= cfg.fd_step;
        project(probe, space);
        double minus = eval(probe);
        out.evals += 2;

        const double dir = plus < minus ? 1.0 : -1.0;
        trial = w;
        trial[o] += dir * step;
        project(trial, space);
        double m = eval(trial);
        ++out.evals;
        if (m < current) {
            w.swap(trial);
            current = m;
            if (current < out.best_margin) {
                out.best_margin = current;
                out.best_w = w;
            }
        } else {
            step = std::max(step * 0.5, 1e-15);
        }
    }
    return out;
}

}  // namespace

SearchResult minimize_margin(const RegionUniverse& u, const Target& target, const SearchConfig& cfg,
                             const GuardSet& guards) {
    if (cfg.iterations < 1) throw std::invalid_argument("search: iterations must be >= 1");
    if (cfg.restarts < 1) throw std::invalid_argument("search: restarts must be >= 1");
    OrbitSpace space(cfg.family);
    SiteGeometry geo{cfg.family.topo, cfg.family.sites, cfg.family.m1, cfg.family.m2};
    EmbeddingMap emb = build_embedding(u, geo);
    Evaluator eval(space, u, emb, target, guards);

    std::vector<RestartOutcome> outcomes(cfg.restarts);
    std::vector<std::exception_ptr> errors(cfg.restarts);
    const int threads = std::max(1, cfg.threads);
    auto worker = [&](int first) {
        for (int r = first; r < cfg.restarts; r += threads) {
            try {
                outcomes[r] = run_restart(space, eval, cfg, r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    for (int r = 0; r < cfg.restarts; ++r)
        if (errors[r]) std::rethrow_exception(errors[r]);

    SearchResult result;
    int best = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
        result.restart_best.push_back(outcomes[r].best_margin);
        result.evaluations += outcomes[r].evals;
        if (outcomes[r].best_margin < outcomes[best].best_margin) best = r;
    }
    result.min_margin = outcomes[best].best_margin;
    result.argmin_probs.resize(space.n_configs);
    for (size_t cfg_i = 0; cfg_i < space.n_configs; ++cfg_i)
        result.argmin_probs[cfg_i] = outcomes[best].best_w[space.orbit_of[cfg_i]];

    // independent re-evaluation through the plain entropy pipeline
    ProbTable table;
    table.alphabet = cfg.family.alphabet;
    table.sites = cfg.family.sites;
    table.topo = cfg.family.topo;
    table.m1 = cfg.family.m1;
    table.m2 = cfg.family.m2;
    table.probs = result.argmin_probs;
    auto model = classical_model(std::move(table));
    EntropyTable et = entropy_table(*model, u, emb);
    double recomputed = evaluate_target(target, et);
    if (std::abs(recomputed - result.min_margin) > 1e-10)
        throw std::logic_error("search: orbit evaluation disagrees with the entropy pipeline");
    return result;
}

std::vector<PairSweepEntry> sweep_pairs(const RegionUniverse& u, const SearchConfig& cfg) {
    std::vector<PairSweepEntry> out;
    for (const auto& [a, b] : nested_pairs(u)) {
        PairSweepEntry e;
        e.a = a;
        e.b = b;
        e.min_margin = minimize_margin(u, target_mean_monotone(a, b, u), cfg).min_margin;
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const PairSweepEntry& x, const PairSweepEntry& y) {
        if (x.min_margin != y.min_margin) return x.min_margin < y.min_margin;
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

}  // namespace entrolab
