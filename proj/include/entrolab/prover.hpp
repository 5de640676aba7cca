#pragma once

#include <string>
#include <vector>

#include "entrolab/rational.hpp"
#include "entrolab/universe.hpp"

namespace entrolab {

/// A machine-checkable proof: positive multipliers on constraint rows whose
/// weighted sum equals the target coefficient-by-coefficient.
struct Certificate {
    std::vector<std::pair<int, Rational>> multipliers;  // (constraint index, lambda > 0)
};

/// A pseudo-entropy assignment: satisfies every given constraint while giving
/// the target a strictly negative value, demonstrating non-derivability
/// within the given constraint set.
struct Witness {
    std::vector<Rational> values;  // one per class
};

struct ProveResult {
    bool derivable = false;
    Certificate certificate;  // meaningful when derivable
    Witness witness;          // meaningful when not derivable
};

struct ProverLimits {
    int max_constraints = 20000;
    int max_classes = 2000;
};

/// Decides whether the target lies in the conic hull of the constraints,
/// in exact rational arithmetic (phase-one simplex, Bland's rule, so the
/// run is deterministic and terminating). Returns either a verified
/// certificate or a verified witness.
ProveResult prove(const std::vector<Constraint>& constraints, int n_classes, const Target& target,
                  const ProverLimits& limits = {});

ProveResult prove(const RegionUniverse& u, const Target& target, const ProverLimits& limits = {});

/// Exact recomputation of sum(lambda_i * constraint_i) == target with all
/// lambda_i > 0. Pure check, no LP involved; false on any mismatch.
bool verify_certificate(const std::vector<Constraint>& constraints, const Target& target,
                        const Certificate& cert);

/// Exact check that the witness satisfies every constraint and strictly
/// violates the target.
bool verify_witness(const std::vector<Constraint>& constraints, const Target& target,
                    const Witness& witness);

/// Human-readable rendering of a certificate, multipliers grouped by
/// constraint kind.
std::string certificate_pretty(const std::vector<Constraint>& constraints, const Target& target,
                               const Certificate& cert, const std::vector<std::string>& class_names);

struct ScanPairResult {
    int a = -1, b = -1;
    bool derivable = false;
};

struct ScanAverageResult {
    int figure = -1;
    bool evaluable = false;  // all one-cell-deleted subfigures present
    bool derivable = false;
};

struct ScanReport {
    std::vector<ScanPairResult> pairs;
    std::vector<ScanAverageResult> averages;
};

/// Classifies the mean-entropy target of every given nested pair and, for
/// every class whose one-cell-deleted subfigures are all in the universe,
/// the average-subfigure bound.
ScanReport scan(const RegionUniverse& u, const std::vector<Constraint>& constraints,
                const std::vector<std::pair<int, int>>& pairs);

}  // namespace entrolab
