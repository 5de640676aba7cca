#include "entrolab/corrent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entrolab {

double index_of_correlation(const std::vector<double>& seq, int n) {
    if (n < 1 || n > static_cast<int>(seq.size()))
        throw std::out_of_range("index_of_correlation: n out of range");
    return n * seq[0] - seq[n - 1];
}

std::vector<double> correlation_entropies(const std::vector<double>& seq) {
    if (seq.size() < 2) throw std::invalid_argument("correlation_entropies: need S(1) and S(2)");
    std::vector<double> out;
    out.push_back(2.0 * seq[0] - seq[1]);
    for (size_t m = 3; m <= seq.size(); ++m)
        out.push_back(2.0 * seq[m - 2] - seq[m - 3] - seq[m - 1]);
    return out;
}

std::vector<double> reconstruct(const std::vector<double>& seq) {
    if (seq.empty()) throw std::invalid_argument("reconstruct: empty sequence");
    std::vector<double> out(seq.size());
    out[0] = seq[0];
    if (seq.size() == 1) return out;
    std::vector<double> sc = correlation_entropies(seq);
    for (size_t n = 2; n <= seq.size(); ++n) {
        double s = n * seq[0];
        for (size_t m = 2; m <= n; ++m) s -= static_cast<double>(n + 1 - m) * sc[m - 2];
        out[n - 1] = s;
    }
    return out;
}

DecompositionReport decompose(const std::vector<double>& seq) {
    DecompositionReport r;
    if (seq.empty()) throw std::invalid_argument("decompose: empty sequence");
    const int n = static_cast<int>(seq.size());
    r.index_n = index_of_correlation(seq, n);
    if (n >= 2) {
        r.correlation = correlation_entropies(seq);
        r.min_correlation = *std::min_element(r.correlation.begin(), r.correlation.end());
    }
    r.reconstructed = reconstruct(seq);
    for (int i = 0; i < n; ++i)
        r.max_reconstruction_error = std::max(r.max_reconstruction_error, std::abs(r.reconstructed[i] - seq[i]));
    double weighted = 0.0;
    for (int m = 2; m <= n; ++m) weighted += static_cast<double>(n + 1 - m) * r.correlation[m - 2];
    r.index_identity_error = std::abs(r.index_n - weighted);
    return r;
}

IncrementReport increment_bound_check(const std::vector<double>& seq, double mean_limit, double tol) {
    IncrementReport r;
    if (seq.size() < 2) throw std::invalid_argument("increment_bound_check: need at least S(1) and S(2)");
    for (size_t n = 2; n <= seq.size(); ++n) r.increments.push_back(seq[n - 1] - seq[n - 2]);
    r.min_increment = *std::min_element(r.increments.begin(), r.increments.end());
    r.min_margin_vs_limit = r.min_increment - mean_limit;
    r.nonnegative_ok = r.min_increment >= -tol;
    r.limit_ok = r.min_margin_vs_limit >= -tol;
    return r;
}

PurityReport purity_propagation(const EntropyTable& table, const RegionUniverse& u, Topology topo,
                                double tol) {
    PurityReport r;
    if (table.values.size() != u.classes.size())
        throw std::invalid_argument("purity_propagation: table does not cover the universe");
    if (topo == Topology::ring) {
        r.applicable = false;
        r.note = "ring topology: a pure total state may have mixed subregions, check skipped";
        return r;
    }
    int zero = -1;
    for (size_t c = 0; c < table.values.size(); ++c)
        if (table.values[c] <= tol && (zero < 0 || table.values[c] < table.values[zero]))
            zero = static_cast<int>(c);
    if (zero < 0) {
        r.note = "no class at the zero-entropy threshold";
        return r;
    }
    r.triggered = true;
    r.zero_class = zero;
    const double zero_vol = u.classes[zero].volume.to_double();
    for (size_t c = 0; c < table.values.size(); ++c) {
        double ratio = std::max(1.0, u.classes[c].volume.to_double() / zero_vol);
        if (table.values[c] > tol * ratio + 1e-15) {
            r.pass = false;
            r.offending_class = static_cast<int>(c);
            r.note = "class '" + u.classes[zero].name + "' is pure but '" + u.classes[c].name +
                     "' has entropy " + std::to_string(table.values[c]);
            return r;
        }
    }
    r.note = "zero entropy propagates to every class";
    return r;
}

}  // namespace entrolab
