#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "entrolab/figures.hpp"
#include "entrolab/rational.hpp"

namespace entrolab {

/// Sparse linear form over universe class indices, sorted by index, no zeros.
using LinearForm = std::vector<std::pair<int, Rational>>;

/// Merges duplicate indices, drops zero coefficients, sorts by index.
LinearForm normalize_form(LinearForm v);
std::string form_to_string(const LinearForm& v, const std::vector<std::string>& names);

/// One congruence class of figures in a universe.
struct UniverseClass {
    CanonicalKey key;           // empty rep for abstract universes
    Rational volume;
    std::string name;
    std::optional<int> arc_length;  // set for ring universes (abstract arcs)
};

/// A relation between regions of an abstract universe:
/// p ∪ q = u with p ∩ q = i (i = -1 means disjoint).
struct AbstractRelation {
    int p = -1, q = -1, u = -1, i = -1;
};

/// A finite family of figure congruence classes, either concrete (built from
/// lattice figures, closed under the recorded unions/intersections) or
/// abstract (named regions with declared volumes and union/intersection
/// relations, no coordinates).
struct RegionUniverse {
    SymmetryKind group = SymmetryKind::translations;
    bool is_abstract = false;
    bool complete = true;
    std::vector<int> window;  // concrete only

    std::vector<UniverseClass> classes;
    std::vector<Figure> placements;      // concrete: every placement of every class
    std::vector<int> placement_class;    // class index per placement
    std::vector<AbstractRelation> relations;  // abstract only

    int find_class(const Figure& f) const;                // -1 if absent
    int class_by_name(const std::string& name) const;     // -1 if absent
    int require_class(const std::string& name) const;     // throws if absent
    const std::string& name_of(int cls) const { return classes[cls].name; }

    /// True if some placement of a is contained in some placement of b
    /// (concrete), or containment follows from the declared relations
    /// (abstract). Reflexive.
    bool nested(int a, int b) const;

    std::unordered_map<std::string, int> class_index;  // canonical key text -> class
    std::vector<std::vector<bool>> nested_;            // filled on construction
};

struct CloseOptions {
    int max_cells = 12;
    int max_rounds = 8;
    int max_classes = 512;
    int max_placements = 4000;
};

/// Builds the family generated by the seeds inside the window: all group
/// images of every class translated to every fitting offset, closed under
/// union+intersection of overlapping placements and union of face-adjacent
/// disjoint placements, up to max_cells per figure. Budget exhaustion leaves
/// complete=false. Deterministic for fixed inputs.
RegionUniverse close_universe(const std::vector<Figure>& seeds, const std::vector<int>& window,
                              SymmetryKind group, const CloseOptions& opts = {});

/// 1-D segments of lengths 1..n under translations.
RegionUniverse chain_universe(int n);

/// All axis-aligned boxes fitting the bounds, with all their placements; no
/// closure rounds (unions of misaligned boxes are not added).
RegionUniverse box_universe(const std::vector<int>& bounds, SymmetryKind group);

/// A nested pair of continuum boxes with rational sides, rescaled by the
/// common denominator of all sides into lattice boxes. Irrational sides are
/// not representable; non-nested or non-positive sides are rejected.
struct ScaledBoxPair {
    Figure inner, outer;
    long scale = 1;  // lattice cells per continuum unit
};

ScaledBoxPair scale_rational_boxes(const std::vector<Rational>& inner,
                                   const std::vector<Rational>& outer);

/// Every non-empty subset of f as its own class (identity group). The arena
/// for derivations that may not use symmetry.
RegionUniverse subset_universe(const Figure& f);

/// Abstract arcs of length 1..n on a closed n-site ring.
RegionUniverse ring_universe(int n);

/// Parses the abstract-universe JSON format: named regions with volumes and
/// congruence labels plus [p, q, union, intersection?] relation quadruples.
/// Rejects volume assignments that break inclusion-exclusion and unresolved
/// names.
RegionUniverse load_abstract_universe(const std::string& json_text);

/// An axiom instance over the universe's classes: coeffs · S >= 0.
struct Constraint {
    enum class Kind { POS, SA, SSA };
    Kind kind;
    LinearForm coeffs;
    std::string provenance;
};

const char* to_string(Constraint::Kind k);

/// Emits one POS row per class, one SA row per unordered disjoint placement
/// pair whose union is in-universe, and one SSA row per unordered overlapping
/// placement pair whose union and intersection are both in-universe
/// (relations play that role for abstract universes). Deduplicated after the
/// congruence quotient; deterministic order.
std::vector<Constraint> generate_constraints(const RegionUniverse& u);

/// Drops POS rows; used to derive results from subadditivity alone.
std::vector<Constraint> without_positivity(std::vector<Constraint> cons);

/// A candidate inequality coeffs · S >= 0 over the universe's classes.
struct Target {
    LinearForm coeffs;
    std::string description;
};

/// |B|·S(A) - |A|·S(B) >= 0, i.e. mean entropy does not increase from A to B.
/// Requires A nested in B.
Target target_mean_monotone(int a, int b, const RegionUniverse& u);

/// S(B) - S(A) >= 0. Requires A nested in B.
Target target_entropy_monotone(int a, int b, const RegionUniverse& u);

Target target_general(LinearForm coeffs, std::string description, const RegionUniverse& u);

/// sum_j S(F minus cell j) - (n-1)·S(F) >= 0 for an n-cell figure class:
/// the figure's mean entropy is at most the average of its one-cell-deleted
/// subfigures' mean entropies. Throws if a subfigure class is missing.
Target target_average_subfigures(int cls, const RegionUniverse& u);

/// All nested class pairs (a, b), a != b, a nested in b.
std::vector<std::pair<int, int>> nested_pairs(const RegionUniverse& u);

}  // namespace entrolab
