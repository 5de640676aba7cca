#include "doctest.h"

#include <stdexcept>

#include <set>

#include "entrolab/figures.hpp"
#include "entrolab/rng.hpp"

using namespace entrolab;

namespace {

Figure catalog_figure(const std::string& name) {
    for (const auto& [n, f] : builtin_catalog())
        if (n == name) return f;
    throw std::logic_error("no catalog figure " + name);
}

Figure random_figure(Rng& rng, int nu, int max_cells, int extent) {
    std::set<Cell> cells;
    int n = 1 + static_cast<int>(rng.below(max_cells));
    while (static_cast<int>(cells.size()) < n) {
        Cell c(nu);
        for (int i = 0; i < nu; ++i) c[i] = static_cast<int>(rng.below(extent));
        cells.insert(c);
    }
    return make_figure(nu, {cells.begin(), cells.end()});
}

}  // namespace

TEST_CASE("box construction") {
    CHECK(box({1}).volume() == 1);
    CHECK(box({2, 3}).volume() == 6);
    CHECK(box({4}).volume() == 4);
    CHECK(box({4}).cells.front() == Cell{0});
    CHECK_THROWS_AS(box({0}), std::invalid_argument);
    CHECK_THROWS_AS(box({2, -1}), std::invalid_argument);
}

TEST_CASE("figure validation") {
    CHECK_THROWS_AS(make_figure(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_figure(2, {{0, 0}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_figure(2, {{0, 0}, {0}}), std::invalid_argument);
}

TEST_CASE("set operations") {
    Figure domino = catalog_figure("domino");
    Figure far = translate(domino, {5, 5});
    CHECK(union_of(domino, far).volume() == 4);
    CHECK(!intersect(domino, far).has_value());

    Figure square = catalog_figure("square2");
    Figure shifted = translate(square, {1, 0});
    auto inter = intersect(square, shifted);
    REQUIRE(inter.has_value());
    CHECK(inter->volume() == 2);
    CHECK(congruent(*inter, domino, SymmetryKind::full));

    CHECK(catalog_figure("L3").volume() == 3);
    CHECK_THROWS_AS(union_of(domino, box({2})), std::invalid_argument);
    CHECK(is_subset(domino, square));
    CHECK(!is_subset(square, domino));
}

TEST_CASE("inclusion-exclusion of volumes on random overlapping figures") {
    Rng rng(777);
    for (int i = 0; i < 300; ++i) {
        Figure f = random_figure(rng, 2, 6, 4);
        Figure g = random_figure(rng, 2, 6, 4);
        auto inter = intersect(f, g);
        int inter_vol = inter ? inter->volume() : 0;
        CHECK(union_of(f, g).volume() + inter_vol == f.volume() + g.volume());
    }
}

TEST_CASE("congruence under the two groups") {
    Figure l3 = catalog_figure("L3");
    CHECK(congruent(l3, translate(l3, {3, -2}), SymmetryKind::none) == false);
    CHECK(congruent(l3, translate(l3, {3, -2}), SymmetryKind::translations));
    CHECK(congruent(l3, translate(l3, {3, -2}), SymmetryKind::full));

    Figure rotated = make_figure(2, {{0, 0}, {0, 1}, {1, 1}});  // 90-degree turn of L3
    CHECK(!congruent(l3, rotated, SymmetryKind::translations));
    CHECK(congruent(l3, rotated, SymmetryKind::full));

    Figure straight = catalog_figure("R3");
    CHECK(!congruent(l3, straight, SymmetryKind::translations));
    CHECK(!congruent(l3, straight, SymmetryKind::full));
}

TEST_CASE("canonicalization is idempotent and group images preserve volume") {
    Rng rng(31337);
    for (int i = 0; i < 200; ++i) {
        Figure f = random_figure(rng, 2, 5, 4);
        for (SymmetryKind g : {SymmetryKind::none, SymmetryKind::translations, SymmetryKind::full}) {
            CanonicalKey key = canonicalize(f, g);
            CHECK(canonicalize(key.rep, g).text == key.text);
            CHECK(key.rep.volume() == f.volume());
        }
        for (const Figure& img : group_images(f, SymmetryKind::full)) {
            CHECK(img.volume() == f.volume());
            CHECK(congruent(img, f, SymmetryKind::full));
        }
    }
}

TEST_CASE("adjacency means sharing a unit face") {
    Figure a = box({1, 1});
    CHECK(adjacent(a, translate(a, {1, 0})));
    CHECK(adjacent(a, translate(a, {0, -1})));
    CHECK(!adjacent(a, translate(a, {1, 1})));  // diagonal contact only
    CHECK(!adjacent(a, translate(a, {2, 0})));
    CHECK(!adjacent(a, a));  // not disjoint
}

TEST_CASE("ascii rendering, top row first") {
    CHECK(render_ascii(catalog_figure("L4")) == "#..\n###\n");
    CHECK(render_ascii(catalog_figure("domino")) == "##\n");
    CHECK(render_ascii(catalog_figure("square2")) == "##\n##\n");
    CHECK(render_ascii(box({3})) == "###\n");
    CHECK(render_ascii(make_figure(2, {{0, 0}, {2, 0}})) == "#.#\n");
}

TEST_CASE("key strings round-trip") {
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        Figure f = random_figure(rng, 2, 6, 5);
        CHECK(figure_from_key(key_string(f)) == f);
    }
    Figure c1 = random_figure(rng, 1, 4, 6);
    CHECK(figure_from_key(key_string(c1)) == c1);
}

TEST_CASE("normalize_to_origin pins the bounding box") {
    Figure f = make_figure(2, {{2, -1}, {3, -1}, {2, 0}});
    Figure n = normalize_to_origin(f);
    CHECK(n.cells.front() == Cell{0, 0});
    CHECK(congruent(f, n, SymmetryKind::translations));
}
