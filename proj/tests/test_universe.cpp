#include "doctest.h"

#include <stdexcept>

#include <algorithm>
#include <set>

#include "entrolab/io.hpp"
#include "entrolab/universe.hpp"

using namespace entrolab;

namespace {

Figure catalog_figure(const std::string& name) {
    for (const auto& [n, f] : builtin_catalog())
        if (n == name) return f;
    throw std::logic_error("no catalog figure " + name);
}

std::string read_data(const std::string& name) { return io::read_file(std::string(ENTROLAB_DATA_DIR) + "/" + name); }

// Serializes a constraint set with classes identified by canonical key so
// universes built from reordered seeds can be compared.
std::set<std::string> portable_constraints(const RegionUniverse& u) {
    std::set<std::string> out;
    for (const Constraint& g : generate_constraints(u)) {
        std::vector<std::string> parts;
        for (const auto& [cls, c] : g.coeffs) parts.push_back(u.classes[cls].key.text + "*" + c.str());
        std::sort(parts.begin(), parts.end());
        std::string s = to_string(g.kind);
        for (const auto& p : parts) s += "|" + p;
        out.insert(s);
    }
    return out;
}

bool has_constraint(const RegionUniverse& u, const std::vector<Constraint>& cons,
                    const std::vector<std::pair<std::string, long>>& named) {
    LinearForm want;
    for (const auto& [name, coeff] : named) want.emplace_back(u.require_class(name), Rational(coeff));
    want = normalize_form(std::move(want));
    return std::any_of(cons.begin(), cons.end(), [&](const Constraint& g) { return g.coeffs == want; });
}

}  // namespace

TEST_CASE("closing a single cell over a 3x1 window yields the three chains") {
    RegionUniverse u = close_universe({box({1})}, {3}, SymmetryKind::translations);
    CHECK(u.complete);
    REQUIRE(u.classes.size() == 3);
    CHECK(u.class_by_name("chain1") >= 0);
    CHECK(u.class_by_name("chain2") >= 0);
    CHECK(u.class_by_name("chain3") >= 0);
}

TEST_CASE("closing a domino over a 2x2 window reaches the L-tromino and the square") {
    RegionUniverse u = close_universe({catalog_figure("domino")}, {2, 2}, SymmetryKind::full);
    CHECK(u.complete);
    CHECK(u.class_by_name("domino") >= 0);
    CHECK(u.class_by_name("L3") >= 0);
    CHECK(u.class_by_name("square2") >= 0);
    CHECK(u.class_by_name("cell") >= 0);
}

TEST_CASE("closing a 2x2 square over a 3x2 window reaches the cell, domino, L-tromino") {
    RegionUniverse u = close_universe({catalog_figure("square2")}, {3, 2}, SymmetryKind::full);
    CHECK(u.class_by_name("cell") >= 0);
    CHECK(u.class_by_name("domino") >= 0);
    CHECK(u.class_by_name("L3") >= 0);
}

TEST_CASE("seed that cannot fit the window is rejected") {
    CHECK_THROWS_AS(close_universe({catalog_figure("R4")}, {3, 2}, SymmetryKind::full),
                    std::invalid_argument);
}

TEST_CASE("budget exhaustion leaves the universe incomplete") {
    CloseOptions opts;
    opts.max_rounds = 0;
    RegionUniverse u = close_universe({box({1})}, {3}, SymmetryKind::translations, opts);
    CHECK(!u.complete);
    CHECK(u.classes.size() == 1);
}

TEST_CASE("the 3-chain universe carries the expected constraint rows") {
    RegionUniverse u = chain_universe(3);
    auto cons = generate_constraints(u);
    // S(1)+S(2)-S(3) >= 0 and 2 S(2)-S(1)-S(3) >= 0
    CHECK(has_constraint(u, cons, {{"chain1", 1}, {"chain2", 1}, {"chain3", -1}}));
    CHECK(has_constraint(u, cons, {{"chain2", 2}, {"chain1", -1}, {"chain3", -1}}));
    // one positivity row per class
    int pos = 0;
    for (const auto& g : cons) pos += g.kind == Constraint::Kind::POS;
    CHECK(pos == 3);
}

TEST_CASE("a universe with no overlapping placements emits no SSA rows") {
    // two cells three apart in a 4-window: placements never overlap,
    // and no union resolves, so only positivity remains
    RegionUniverse u = close_universe({box({1})}, {4}, SymmetryKind::translations,
                                      {.max_cells = 1, .max_rounds = 4});
    auto cons = generate_constraints(u);
    for (const auto& g : cons) CHECK(g.kind == Constraint::Kind::POS);
}

TEST_CASE("every SSA row satisfies volume inclusion-exclusion") {
    RegionUniverse u = close_universe({catalog_figure("L4")}, {3, 2}, SymmetryKind::full);
    for (const Constraint& g : generate_constraints(u)) {
        if (g.kind == Constraint::Kind::POS) continue;
        Rational signed_volume(0);
        for (const auto& [cls, c] : g.coeffs) signed_volume += c * u.classes[cls].volume;
        CHECK(signed_volume == Rational(0));
    }
}

TEST_CASE("congruent placement pairs collapse to a single constraint row") {
    // the four orientations of the domino-pair overlap all quotient to the
    // same row, so no two emitted constraints may share coefficients
    RegionUniverse u = close_universe({catalog_figure("domino")}, {2, 2}, SymmetryKind::full);
    auto cons = generate_constraints(u);
    std::set<std::string> seen;
    for (const Constraint& g : cons) {
        std::string key = std::string(to_string(g.kind));
        for (const auto& [cls, c] : g.coeffs) key += "|" + std::to_string(cls) + "*" + c.str();
        CHECK(seen.insert(key).second);
    }
    // and the quotient leaves far fewer rows than raw placement pairs
    CHECK(cons.size() < u.placements.size() * (u.placements.size() - 1) / 2);
}

TEST_CASE("constraint generation does not depend on seed order") {
    std::vector<Figure> seeds = {catalog_figure("domino"), catalog_figure("L3"), catalog_figure("cell")};
    RegionUniverse a = close_universe(seeds, {3, 2}, SymmetryKind::full);
    std::reverse(seeds.begin(), seeds.end());
    RegionUniverse b = close_universe(seeds, {3, 2}, SymmetryKind::full);
    CHECK(portable_constraints(a) == portable_constraints(b));
}

TEST_CASE("box universe holds every box and nothing else") {
    RegionUniverse u = box_universe({4, 4}, SymmetryKind::full);
    CHECK(u.classes.size() == 10);  // shapes {a,b} with 1 <= a <= b <= 4
    CHECK(u.complete);
    CHECK(u.nested(u.require_class("cell"), u.require_class("square2")));
    CHECK(!u.nested(u.require_class("square2"), u.require_class("cell")));
}

TEST_CASE("subset universe enumerates all non-empty subsets with identity group") {
    RegionUniverse u = subset_universe(catalog_figure("L3"));
    CHECK(u.classes.size() == 7);
    CHECK(u.group == SymmetryKind::none);
    // two congruent one-cell subsets stay distinct classes
    CHECK(u.find_class(make_figure(2, {{0, 0}})) != u.find_class(make_figure(2, {{1, 0}})));
}

TEST_CASE("hexagon file loads with consistent volumes") {
    RegionUniverse u = load_abstract_universe(read_data("hexagon.json"));
    CHECK(u.is_abstract);
    CHECK(u.classes.size() == 9);
    CHECK(u.classes[u.require_class("F6")].volume == Rational(24));
    CHECK(u.nested(u.require_class("D"), u.require_class("H")));
    CHECK(u.nested(u.require_class("H"), u.require_class("F6")));
    CHECK(u.nested(u.require_class("G"), u.require_class("H")));
    auto cons = generate_constraints(u);
    int sa = 0, ssa = 0;
    for (const auto& g : cons) {
        sa += g.kind == Constraint::Kind::SA;
        ssa += g.kind == Constraint::Kind::SSA;
    }
    CHECK(sa == 2);
    CHECK(ssa == 6);
}

TEST_CASE("volume assignments breaking inclusion-exclusion are rejected") {
    std::string bad = R"({
      "regions": {
        "A": {"vol": 2, "class": "A"},
        "B": {"vol": 2, "class": "B"},
        "U": {"vol": 5, "class": "U"}
      },
      "relations": [["A", "B", "U"]]
    })";
    CHECK_THROWS_AS(load_abstract_universe(bad), std::invalid_argument);
}

TEST_CASE("unresolved names are rejected") {
    std::string bad = R"({
      "regions": {"A": {"vol": 1, "class": "A"}},
      "relations": [["A", "A", "missing"]]
    })";
    CHECK_THROWS_WITH_AS(load_abstract_universe(bad), doctest::Contains("missing"),
                         std::invalid_argument);
}

TEST_CASE("the bundled ring file matches the generated ring universe") {
    RegionUniverse file = load_abstract_universe(read_data("ring_6.json"));
    RegionUniverse gen = ring_universe(6);
    REQUIRE(file.classes.size() == gen.classes.size());
    auto cons_of = [](const RegionUniverse& u) {
        std::set<std::string> out;
        for (const Constraint& g : generate_constraints(u)) {
            std::string s = to_string(g.kind);
            for (const auto& [cls, c] : g.coeffs) s += "|" + std::to_string(cls) + "*" + c.str();
            out.insert(s);
        }
        return out;
    };
    CHECK(cons_of(file) == cons_of(gen));
}

TEST_CASE("rational volumes parse in abstract files") {
    std::string half = R"({
      "regions": {
        "T": {"vol": "1/2", "class": "T"},
        "T2": {"vol": "1/2", "class": "T"},
        "D": {"vol": 1, "class": "D"}
      },
      "relations": [["T", "T2", "D"]]
    })";
    RegionUniverse u = load_abstract_universe(half);
    CHECK(u.classes[u.require_class("T")].volume == Rational(1, 2));
}

TEST_CASE("mean-entropy target orientation and subset guard") {
    RegionUniverse u = load_abstract_universe(read_data("boxes_2d.json"));
    Target t = target_mean_monotone(u.require_class("domino"), u.require_class("L3"), u);
    // 3 S(domino) - 2 S(L3) >= 0
    LinearForm want = normalize_form({{u.require_class("domino"), Rational(3)}, {u.require_class("L3"), Rational(-2)}});
    CHECK(t.coeffs == want);
    CHECK_THROWS_AS(target_mean_monotone(u.require_class("L3"), u.require_class("R3"), u),
                    std::invalid_argument);
    // identical classes give the empty (trivially derivable) target
    CHECK(target_mean_monotone(u.require_class("L3"), u.require_class("L3"), u).coeffs.empty());
}

TEST_CASE("average-subfigure target needs every one-cell-deleted subfigure") {
    RegionUniverse full = subset_universe(catalog_figure("L4"));
    CHECK_NOTHROW(target_average_subfigures(full.find_class(catalog_figure("L4")), full));
    RegionUniverse sparse = box_universe({2, 2}, SymmetryKind::full);
    CHECK_THROWS_AS(target_average_subfigures(sparse.require_class("square2"), sparse),
                    std::runtime_error);
}

TEST_CASE("rational box pairs rescale onto the lattice") {
    ScaledBoxPair p = scale_rational_boxes({Rational(3, 2), Rational(1)}, {Rational(2), Rational(5, 2)});
    CHECK(p.scale == 2);
    CHECK(p.inner == box({3, 2}));
    CHECK(p.outer == box({4, 5}));

    ScaledBoxPair q = scale_rational_boxes({Rational(1, 3)}, {Rational(1, 2)});
    CHECK(q.scale == 6);
    CHECK(q.inner == box({2}));
    CHECK(q.outer == box({3}));

    CHECK_THROWS_AS(scale_rational_boxes({Rational(2)}, {Rational(3, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(scale_rational_boxes({Rational(0)}, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(scale_rational_boxes({Rational(1)}, {Rational(1), Rational(1)}),
                    std::invalid_argument);
}

TEST_CASE("general target validates its input") {
    RegionUniverse u = chain_universe(3);
    CHECK_THROWS_AS(target_general({}, "empty", u), std::invalid_argument);
    CHECK_THROWS_AS(target_general({{99, Rational(1)}}, "bad index", u), std::invalid_argument);
}
