#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "entrolab/corrent.hpp"
#include "entrolab/rng.hpp"
#include "entrolab/universe.hpp"

using namespace entrolab;

namespace {

constexpr double kLn2 = 0.6931471805599453;

double binary_entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

std::vector<double> markov_sequence(double flip, int n) {
    MarkovChain1D chain = binary_flip_chain(flip);
    std::vector<double> seq;
    for (int k = 1; k <= n; ++k) seq.push_back(markov_entropy(chain, k));
    return seq;
}

}  // namespace

TEST_CASE("index of correlation") {
    // independent sites carry no correlation
    std::vector<double> iid;
    for (int k = 1; k <= 6; ++k) iid.push_back(k * binary_entropy(0.3));
    CHECK(index_of_correlation(iid, 6) == doctest::Approx(0.0).epsilon(1e-12));

    // constant sequence (ghz-like): (n-1) ln 2
    std::vector<double> flat(5, kLn2);
    CHECK(index_of_correlation(flat, 5) == doctest::Approx(4 * kLn2).epsilon(1e-12));

    // two-state chain: brute-force value from the joint distribution
    MarkovChain1D chain = binary_flip_chain(0.1);
    ProbTable joint = markov_joint(chain, 3);
    double s3 = shannon_entropy(joint, {0, 1, 2});
    std::vector<double> seq = markov_sequence(0.1, 3);
    CHECK(index_of_correlation(seq, 3) == doctest::Approx(3 * seq[0] - s3).epsilon(1e-12));
    CHECK(index_of_correlation(seq, 3) == doctest::Approx(2 * (kLn2 - binary_entropy(0.1))).epsilon(1e-10));

    CHECK_THROWS_AS(index_of_correlation(seq, 4), std::out_of_range);
}

TEST_CASE("correlation entropies of the standard families") {
    std::vector<double> iid;
    for (int k = 1; k <= 6; ++k) iid.push_back(k * 0.42);
    for (double sc : correlation_entropies(iid)) CHECK(sc == doctest::Approx(0.0).epsilon(1e-12));

    // a stationary two-state chain is pairwise-correlated only: the two-point
    // term equals the adjacent mutual information, everything higher vanishes
    std::vector<double> seq = markov_sequence(0.1, 8);
    auto sc = correlation_entropies(seq);
    CHECK(sc[0] == doctest::Approx(index_of_correlation(seq, 2)).epsilon(1e-12));
    CHECK(sc[0] == doctest::Approx(kLn2 - binary_entropy(0.1)).epsilon(1e-12));
    for (size_t m = 1; m < sc.size(); ++m) CHECK(sc[m] == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<double> flat(5, kLn2);
    auto flat_sc = correlation_entropies(flat);
    CHECK(flat_sc[0] == doctest::Approx(kLn2).epsilon(1e-12));
    for (size_t m = 1; m < flat_sc.size(); ++m) CHECK(flat_sc[m] == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(correlation_entropies({1.0}), std::invalid_argument);
}

TEST_CASE("reconstruction is an algebraic identity on arbitrary sequences") {
    Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> seq;
        for (int k = 0; k < 8; ++k) seq.push_back(4.0 * rng.uniform() - 2.0);
        std::vector<double> rebuilt = reconstruct(seq);
        for (int k = 0; k < 8; ++k) CHECK(std::abs(rebuilt[k] - seq[k]) <= 1e-12);
        DecompositionReport r = decompose(seq);
        CHECK(r.max_reconstruction_error <= 1e-12);
        CHECK(r.index_identity_error <= 1e-12);
    }
}

TEST_CASE("telescoping: S(1) - sum of correlation entropies equals the last increment") {
    Rng rng(515);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> seq;
        for (int k = 0; k < 7; ++k) seq.push_back(3.0 * rng.uniform());
        auto sc = correlation_entropies(seq);
        double total = seq[0];
        for (double v : sc) total -= v;
        double last_increment = seq[6] - seq[5];
        CHECK(total == doctest::Approx(last_increment).epsilon(1e-10));
    }
}

TEST_CASE("increment bounds") {
    // stationary chain: every increment equals the conditional entropy
    std::vector<double> seq = markov_sequence(0.1, 8);
    double h = binary_entropy(0.1);
    IncrementReport r = increment_bound_check(seq, h, 1e-9);
    CHECK(r.nonnegative_ok);
    CHECK(r.limit_ok);
    CHECK(r.min_margin_vs_limit == doctest::Approx(0.0).epsilon(1e-10));

    // independent sites: increments equal H(p)
    std::vector<double> iid;
    for (int k = 1; k <= 6; ++k) iid.push_back(k * binary_entropy(0.3));
    IncrementReport ri = increment_bound_check(iid, binary_entropy(0.3), 1e-9);
    CHECK(ri.nonnegative_ok);
    CHECK(ri.limit_ok);

    // constant sequence with zero limit
    std::vector<double> flat(5, kLn2);
    IncrementReport rf = increment_bound_check(flat, 0.0, 1e-9);
    CHECK(rf.nonnegative_ok);
    CHECK(rf.limit_ok);
    CHECK(rf.min_increment == doctest::Approx(0.0));

    CHECK_THROWS_AS(increment_bound_check({1.0}, 0.0, 1e-9), std::invalid_argument);
}

TEST_CASE("purity propagation") {
    RegionUniverse u = box_universe({2, 2}, SymmetryKind::full);

    EntropyTable zeros;
    zeros.values.assign(u.classes.size(), 0.0);
    PurityReport all_pure = purity_propagation(zeros, u, Topology::line, 1e-9);
    CHECK(all_pure.applicable);
    CHECK(all_pure.triggered);
    CHECK(all_pure.pass);

    EntropyTable broken = zeros;
    broken.values[u.require_class("cell")] = 0.3;  // square stays pure, cell does not
    PurityReport bad = purity_propagation(broken, u, Topology::line, 1e-9);
    CHECK(bad.triggered);
    CHECK(!bad.pass);
    CHECK(bad.offending_class == u.require_class("cell"));

    PurityReport skipped = purity_propagation(broken, u, Topology::ring, 1e-9);
    CHECK(!skipped.applicable);
    CHECK(skipped.note.find("ring") != std::string::npos);

    EntropyTable mixed;
    mixed.values.assign(u.classes.size(), 1.0);
    PurityReport untouched = purity_propagation(mixed, u, Topology::line, 1e-9);
    CHECK(untouched.applicable);
    CHECK(!untouched.triggered);
    CHECK(untouched.pass);
}
