#pragma once

#include <string>
#include <vector>

#include "entrolab/models.hpp"

namespace entrolab {

/// n * S(1) - S(n): total correlation of n consecutive sites.
/// `seq[k-1]` holds S(k).
double index_of_correlation(const std::vector<double>& seq, int n);

/// The m-point correlation entropies for m = 2..n:
/// 2 S(1) - S(2) at m = 2 and 2 S(m-1) - S(m-2) - S(m) for m >= 3.
/// Returned with index 0 holding the m = 2 value.
std::vector<double> correlation_entropies(const std::vector<double>& seq);

/// Rebuilds S(1..n) from S(1) and the correlation entropies via
/// S(n) = n S(1) - sum_{m=2..n} (n+1-m) S^c_m. An algebraic identity: the
/// result equals the input for arbitrary sequences.
std::vector<double> reconstruct(const std::vector<double>& seq);

struct DecompositionReport {
    double index_n = 0.0;                  // I_n for the full sequence
    std::vector<double> correlation;       // S^c_2..S^c_n
    std::vector<double> reconstructed;     // rebuilt S(1..n)
    double max_reconstruction_error = 0.0;
    double index_identity_error = 0.0;     // |I_n - sum (n+1-m) S^c_m|
    double min_correlation = 0.0;          // most negative S^c_m (0 when n < 2)
};

DecompositionReport decompose(const std::vector<double>& seq);

struct IncrementReport {
    std::vector<double> increments;        // S(N) - S(N-1) for N = 2..n
    double min_increment = 0.0;
    double min_margin_vs_limit = 0.0;      // min over N of increment - mean_limit
    bool nonnegative_ok = false;
    bool limit_ok = false;
    bool weakened = false;                 // set by callers using a bound instead of an exact limit
};

/// Checks S(N) - S(N-1) >= 0 and >= mean_limit for every N >= 2;
/// `mean_limit` is supplied by the caller (e.g. the chain's conditional
/// entropy, or H(p) for product states).
IncrementReport increment_bound_check(const std::vector<double>& seq, double mean_limit, double tol);

struct PurityReport {
    bool applicable = true;   // false on ring topologies (with a note)
    bool triggered = false;   // some entropy was at the zero threshold
    bool pass = true;
    std::string note;
    int zero_class = -1;
    int offending_class = -1;
};

/// If any class entropy is <= tol, every other class entropy must vanish as
/// well (up to the volume ratio times tol). Skipped on rings, where a pure
/// total state can coexist with mixed subregions.
PurityReport purity_propagation(const EntropyTable& table, const RegionUniverse& u, Topology topo,
                                double tol);

}  // namespace entrolab
