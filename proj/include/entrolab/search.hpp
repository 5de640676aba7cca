#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrolab/models.hpp"
#include "entrolab/universe.hpp"

namespace entrolab {

/// The family of classical states a search optimizes over: full joint tables
/// on a ring or torus, kept exactly invariant under the chosen group.
struct ModelFamily {
    Topology topo = Topology::torus;
    int sites = 0;  // ring length, or m1*m2 for a torus
    int m1 = 0, m2 = 0;
    int alphabet = 2;
    SymmetryKind group = SymmetryKind::full;
};

struct SearchConfig {
    ModelFamily family;
    int iterations = 1000;  // descent steps per restart
    int restarts = 32;
    uint64_t seed = 0;
    double step = 0.02;      // initial descent step, halved on non-improvement
    double fd_step = 1e-4;   // finite-difference probe
    int threads = 1;         // affects speed only, never the result
};

/// Invariants checked at every evaluated state. A violation is a pipeline
/// bug, not a finding, and aborts with a diagnostic dump.
struct GuardSet {
    std::vector<Target> derivable;    // proven targets: margin >= -tol always
    std::vector<Target> disjunction;  // max margin over these >= -tol always
    double tol = 1e-8;
};

struct SearchResult {
    double min_margin = 0.0;
    std::vector<double> argmin_probs;  // full configuration table of the best state
    std::vector<double> restart_best;  // best margin per restart
    uint64_t evaluations = 0;
};

class SoundnessError : public std::runtime_error {
public:
    SoundnessError(const std::string& msg, std::string dump_json)
        : std::runtime_error(msg), dump_(std::move(dump_json)) {}
    const std::string& dump() const { return dump_; }

private:
    std::string dump_;
};

/// Minimizes the target margin over the model family by random restarts plus
/// finite-difference coordinate descent on the probability simplex
/// (clip-and-renormalize projection; states stay exactly symmetric).
/// Deterministic for a fixed config, independent of thread count. The
/// returned minimum is re-evaluated through the plain entropy pipeline and
/// must agree to 1e-10.
SearchResult minimize_margin(const RegionUniverse& u, const Target& target, const SearchConfig& cfg,
                             const GuardSet& guards = {});

struct PairSweepEntry {
    int a = -1, b = -1;       // nested classes, a inside b
    double min_margin = 0.0;  // worst observed mean-entropy margin
};

/// Runs minimize_margin on the mean-entropy target of every nested class
/// pair; entries sorted by margin, worst first.
std::vector<PairSweepEntry> sweep_pairs(const RegionUniverse& u, const SearchConfig& cfg);

}  // namespace entrolab
