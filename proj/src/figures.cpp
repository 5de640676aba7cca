#include "entrolab/figures.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace entrolab {

const char* to_string(SymmetryKind k) {
    switch (k) {
        case SymmetryKind::none: return "none";
        case SymmetryKind::translations: return "translations";
        case SymmetryKind::full: return "full";
    }
    return "?";
}

SymmetryKind symmetry_from_string(const std::string& s) {
    if (s == "none") return SymmetryKind::none;
    if (s == "translations" || s == "trans") return SymmetryKind::translations;
    if (s == "full") return SymmetryKind::full;
    throw std::invalid_argument("unknown symmetry group '" + s + "' (expected none|translations|full)");
}

Figure make_figure(int nu, std::vector<Cell> cells) {
    if (nu < 1) throw std::invalid_argument("figure: dimension must be >= 1");
    if (cells.empty()) throw std::invalid_argument("figure: cell set must be non-empty");
    for (const Cell& c : cells) {
        if (static_cast<int>(c.size()) != nu)
            throw std::invalid_argument("figure: cell dimension mismatch");
    }
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw std::invalid_argument("figure: duplicate cell");
    Figure f;
    f.nu = nu;
    f.cells = std::move(cells);
    return f;
}

Figure box(const std::vector<int>& sides) {
    if (sides.empty()) throw std::invalid_argument("box: needs at least one side length");
    for (int s : sides) {
        if (s < 1) throw std::invalid_argument("box: side lengths must be positive");
    }
    const int nu = static_cast<int>(sides.size());
    std::vector<Cell> cells;
    Cell c(nu, 0);
    for (;;) {
        cells.push_back(c);
        int i = 0;
        while (i < nu && ++c[i] == sides[i]) c[i++] = 0;
        if (i == nu) break;
    }
    return make_figure(nu, std::move(cells));
}

Figure translate(const Figure& f, const Cell& offset) {
    if (static_cast<int>(offset.size()) != f.nu)
        throw std::invalid_argument("translate: offset dimension mismatch");
    Figure g = f;
    for (Cell& c : g.cells)
        for (int i = 0; i < f.nu; ++i) c[i] += offset[i];
    return g;
}

Figure normalize_to_origin(const Figure& f) {
    Cell lo = f.cells.front();
    for (const Cell& c : f.cells)
        for (int i = 0; i < f.nu; ++i) lo[i] = std::min(lo[i], c[i]);
    for (int i = 0; i < f.nu; ++i) lo[i] = -lo[i];
    return translate(f, lo);
}

static void require_same_nu(const Figure& f, const Figure& g) {
    if (f.nu != g.nu) throw std::invalid_argument("figures have different dimensions");
}

Figure union_of(const Figure& f, const Figure& g) {
    require_same_nu(f, g);
    std::vector<Cell> cells;
    cells.reserve(f.cells.size() + g.cells.size());
    std::set_union(f.cells.begin(), f.cells.end(), g.cells.begin(), g.cells.end(),
                   std::back_inserter(cells));
    Figure u;
    u.nu = f.nu;
    u.cells = std::move(cells);
    return u;
}

std::optional<Figure> intersect(const Figure& f, const Figure& g) {
    require_same_nu(f, g);
    std::vector<Cell> cells;
    std::set_intersection(f.cells.begin(), f.cells.end(), g.cells.begin(), g.cells.end(),
                          std::back_inserter(cells));
    if (cells.empty()) return std::nullopt;
    Figure r;
    r.nu = f.nu;
    r.cells = std::move(cells);
    return r;
}

bool is_subset(const Figure& f, const Figure& g) {
    require_same_nu(f, g);
    return std::includes(g.cells.begin(), g.cells.end(), f.cells.begin(), f.cells.end());
}

bool disjoint(const Figure& f, const Figure& g) { return !intersect(f, g).has_value(); }

bool adjacent(const Figure& f, const Figure& g) {
    require_same_nu(f, g);
    if (!disjoint(f, g)) return false;
    for (const Cell& a : f.cells) {
        for (const Cell& b : g.cells) {
            int dist = 0;
            for (int i = 0; i < f.nu && dist <= 1; ++i) dist += std::abs(a[i] - b[i]);
            if (dist == 1) return true;
        }
    }
    return false;
}

std::string key_string(const Figure& f) {
    std::ostringstream os;
    os << f.nu << ':';
    for (size_t i = 0; i < f.cells.size(); ++i) {
        if (i) os << ';';
        for (int j = 0; j < f.nu; ++j) {
            if (j) os << ',';
            os << f.cells[i][j];
        }
    }
    return os.str();
}

Figure figure_from_key(const std::string& key) {
    auto colon = key.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("figure key: missing ':'");
    int nu = std::stoi(key.substr(0, colon));
    std::vector<Cell> cells;
    std::stringstream body(key.substr(colon + 1));
    std::string cell_text;
    while (std::getline(body, cell_text, ';')) {
        Cell c;
        std::stringstream cs(cell_text);
        std::string coord;
        while (std::getline(cs, coord, ',')) c.push_back(std::stoi(coord));
        cells.push_back(std::move(c));
    }
    return make_figure(nu, std::move(cells));
}

// Point transformations of the hyperoctahedral group: an axis permutation
// combined with per-axis sign flips.
namespace {

struct PointTransform {
    std::vector<int> perm;
    std::vector<int> sign;
};

std::vector<PointTransform> hyperoctahedral_group(int nu) {
    std::vector<PointTransform> out;
    std::vector<int> perm(nu);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1u << nu); ++mask) {
            PointTransform t;
            t.perm = perm;
            t.sign.resize(nu);
            for (int i = 0; i < nu; ++i) t.sign[i] = (mask >> i) & 1 ? -1 : 1;
            out.push_back(std::move(t));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Figure apply_transform(const Figure& f, const PointTransform& t) {
    std::vector<Cell> cells;
    cells.reserve(f.cells.size());
    for (const Cell& c : f.cells) {
        Cell d(f.nu);
        for (int i = 0; i < f.nu; ++i) d[i] = t.sign[i] * c[t.perm[i]];
        cells.push_back(std::move(d));
    }
    std::sort(cells.begin(), cells.end());
    Figure g;
    g.nu = f.nu;
    g.cells = std::move(cells);
    return g;
}

// Translate so the lexicographically smallest cell sits at the origin.
Figure normalize_lex(const Figure& f) {
    const Cell& base = f.cells.front();
    Figure g;
    g.nu = f.nu;
    g.cells.reserve(f.cells.size());
    for (const Cell& c : f.cells) {
        Cell d(f.nu);
        for (int i = 0; i < f.nu; ++i) d[i] = c[i] - base[i];
        g.cells.push_back(std::move(d));
    }
    return g;
}

}  // namespace

CanonicalKey canonicalize(const Figure& f, SymmetryKind group) {
    Figure best;
    switch (group) {
        case SymmetryKind::none:
            best = f;
            break;
        case SymmetryKind::translations:
            best = normalize_lex(f);
            break;
        case SymmetryKind::full: {
            bool first = true;
            for (const PointTransform& t : hyperoctahedral_group(f.nu)) {
                Figure candidate = normalize_lex(apply_transform(f, t));
                if (first || candidate.cells < best.cells) {
                    best = std::move(candidate);
                    first = false;
                }
            }
            break;
        }
    }
    CanonicalKey key;
    key.text = key_string(best);
    key.rep = std::move(best);
    return key;
}

bool congruent(const Figure& f, const Figure& g, SymmetryKind group) {
    if (f.nu != g.nu || f.volume() != g.volume()) return false;
    return canonicalize(f, group).text == canonicalize(g, group).text;
}

std::vector<Figure> group_images(const Figure& f, SymmetryKind group) {
    if (group != SymmetryKind::full) return {group == SymmetryKind::none ? f : normalize_to_origin(f)};
    std::set<std::vector<Cell>> seen;
    std::vector<Figure> out;
    for (const PointTransform& t : hyperoctahedral_group(f.nu)) {
        Figure g = normalize_to_origin(apply_transform(f, t));
        if (seen.insert(g.cells).second) out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const Figure& a, const Figure& b) { return a.cells < b.cells; });
    return out;
}

std::string render_ascii(const Figure& f) {
    if (f.nu > 2) throw std::invalid_argument("render_ascii: only 1-D and 2-D figures");
    Figure g = normalize_to_origin(f);
    int w = 0, h = 0;
    for (const Cell& c : g.cells) {
        w = std::max(w, c[0] + 1);
        if (f.nu == 2) h = std::max(h, c[1] + 1);
    }
    if (f.nu == 1) h = 1;
    std::vector<std::string> rows(h, std::string(w, '.'));
    for (const Cell& c : g.cells) rows[f.nu == 2 ? c[1] : 0][c[0]] = '#';
    std::string out;
    for (int y = h - 1; y >= 0; --y) {
        out += rows[y];
        out += '\n';
    }
    return out;
}

const std::vector<std::pair<std::string, Figure>>& builtin_catalog() {
    static const std::vector<std::pair<std::string, Figure>> catalog = {
        {"cell", make_figure(2, {{0, 0}})},
        {"domino", make_figure(2, {{0, 0}, {1, 0}})},
        {"L3", make_figure(2, {{0, 0}, {1, 0}, {0, 1}})},
        {"R3", make_figure(2, {{0, 0}, {1, 0}, {2, 0}})},
        {"square2", make_figure(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})},
        {"L4", make_figure(2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}})},
        {"R4", make_figure(2, {{0, 0}, {1, 0}, {2, 0}, {3, 0}})},
    };
    return catalog;
}

}  // namespace entrolab
