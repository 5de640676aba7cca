#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entrolab {

/// A lattice cell: its integer coordinates in Z^nu.
using Cell = std::vector<int>;

/// Symmetry group acting on figures. `none` is the identity group (every
/// concrete figure is its own congruence class), `translations` quotients by
/// lattice translations, `full` additionally includes axis permutations and
/// reflections (the hyperoctahedral group).
enum class SymmetryKind { none, translations, full };

const char* to_string(SymmetryKind k);
SymmetryKind symmetry_from_string(const std::string& s);

/// A finite non-empty set of lattice cells, all of the same dimension.
/// Cells are kept sorted lexicographically with no duplicates. Figures may be
/// disconnected.
struct Figure {
    int nu = 0;
    std::vector<Cell> cells;

    int volume() const { return static_cast<int>(cells.size()); }
    bool operator==(const Figure&) const = default;
};

/// Validates and normalizes: sorts cells, rejects empty sets, duplicate cells
/// and mixed dimensions. Throws std::invalid_argument.
Figure make_figure(int nu, std::vector<Cell> cells);

/// Axis-aligned box with the given positive side lengths, anchored at the
/// origin (cells 0 <= x_i < sides[i]).
Figure box(const std::vector<int>& sides);

Figure translate(const Figure& f, const Cell& offset);

/// Translate so the coordinate-wise minimum sits at the origin.
Figure normalize_to_origin(const Figure& f);

/// Set union; throws on dimension mismatch.
Figure union_of(const Figure& f, const Figure& g);

/// Set intersection; empty intersections are signalled by nullopt rather than
/// an invalid figure.
std::optional<Figure> intersect(const Figure& f, const Figure& g);

bool is_subset(const Figure& f, const Figure& g);
bool disjoint(const Figure& f, const Figure& g);

/// True if f and g are disjoint but share at least one unit face.
bool adjacent(const Figure& f, const Figure& g);

/// Orbit-minimal representative of a figure under the chosen group, plus a
/// stable text form usable as a hash key. Two figures are congruent iff their
/// keys compare equal.
struct CanonicalKey {
    Figure rep;
    std::string text;
    bool operator==(const CanonicalKey& o) const { return text == o.text; }
};

CanonicalKey canonicalize(const Figure& f, SymmetryKind group);
bool congruent(const Figure& f, const Figure& g, SymmetryKind group);

/// All distinct images of f under the group's point transformations, each
/// translated so its coordinate-wise minimum sits at the origin. Sorted and
/// deduplicated; for `none` and `translations` this is a single figure.
std::vector<Figure> group_images(const Figure& f, SymmetryKind group);

/// Serialized text form "nu:x,y;x,y;..." of the cell list as given.
std::string key_string(const Figure& f);

/// Parses the key_string format back into a figure.
Figure figure_from_key(const std::string& key);

/// Rows of '#' (cell) and '.' (empty), top row first. Supports nu = 1 and 2.
std::string render_ascii(const Figure& f);

/// Named 2-D figures used throughout: cell, domino, L3, R3, square2, L4, R4.
const std::vector<std::pair<std::string, Figure>>& builtin_catalog();

}  // namespace entrolab
