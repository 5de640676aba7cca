#include "entrolab/universe.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace entrolab {

LinearForm normalize_form(LinearForm v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    LinearForm out;
    for (auto& [idx, coeff] : v) {
        if (!out.empty() && out.back().first == idx)
            out.back().second += coeff;
        else
            out.emplace_back(idx, coeff);
    }
    std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
    return out;
}

std::string form_to_string(const LinearForm& v, const std::vector<std::string>& names) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, coeff] : v) {
        if (coeff.sign() >= 0 && !first) os << " + ";
        if (coeff.sign() < 0) os << (first ? "-" : " - ");
        Rational a = abs(coeff);
        if (a != Rational(1)) os << a.str() << "*";
        os << "S(" << names[idx] << ")";
        first = false;
    }
    return os.str();
}

const char* to_string(Constraint::Kind k) {
    switch (k) {
        case Constraint::Kind::POS: return "POS";
        case Constraint::Kind::SA: return "SA";
        case Constraint::Kind::SSA: return "SSA";
    }
    return "?";
}

int RegionUniverse::find_class(const Figure& f) const {
    auto it = class_index.find(canonicalize(f, group).text);
    return it == class_index.end() ? -1 : it->second;
}

int RegionUniverse::class_by_name(const std::string& name) const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].name == name) return static_cast<int>(i);
    return -1;
}

int RegionUniverse::require_class(const std::string& name) const {
    int idx = class_by_name(name);
    if (idx < 0) throw std::invalid_argument("no class named '" + name + "' in universe");
    return idx;
}

bool RegionUniverse::nested(int a, int b) const {
    if (a < 0 || b < 0 || a >= static_cast<int>(classes.size()) || b >= static_cast<int>(classes.size()))
        throw std::out_of_range("nested: class index out of range");
    return nested_[a][b];
}

namespace {

// Incremental builder shared by the concrete universe constructors.
struct Builder {
    RegionUniverse u;
    CloseOptions opts;
    bool budget_hit = false;
    std::map<int, int> fallback_serial;  // per-volume counter for generated names

    explicit Builder(SymmetryKind group, std::vector<int> window, CloseOptions o) : opts(o) {
        u.group = group;
        u.window = std::move(window);
    }

    std::string name_for(const UniverseClass& cls, int index) {
        const Figure& rep = cls.key.rep;
        if (rep.nu == 1) {
            // contiguous segments get chain names
            bool contiguous = true;
            for (int i = 0; i < rep.volume(); ++i)
                if (rep.cells[i][0] != rep.cells[0][0] + i) contiguous = false;
            if (contiguous) return "chain" + std::to_string(rep.volume());
        }
        if (rep.nu == 2) {
            for (const auto& [name, fig] : builtin_catalog())
                if (fig.volume() == rep.volume() && canonicalize(fig, u.group).text == cls.key.text)
                    return name;
        }
        (void)index;
        int serial = fallback_serial[rep.volume()]++;
        return "f" + std::to_string(rep.volume()) + "_" + std::to_string(serial);
    }

    bool fits_window(const Figure& f) const {
        for (const Cell& c : f.cells)
            for (int i = 0; i < f.nu; ++i)
                if (c[i] < 0 || c[i] >= u.window[i]) return false;
        return true;
    }

    // Adds the figure's class if new, enumerating every placement of the
    // class inside the window. Returns the class index, or -1 once budgets
    // are exhausted.
    int add(const Figure& f) {
        CanonicalKey key = canonicalize(f, u.group);
        auto it = u.class_index.find(key.text);
        if (it != u.class_index.end()) return it->second;
        if (static_cast<int>(u.classes.size()) >= opts.max_classes) {
            budget_hit = true;
            return -1;
        }
        int idx = static_cast<int>(u.classes.size());
        UniverseClass cls;
        cls.key = key;
        cls.volume = Rational(f.volume());
        cls.name = name_for(cls, idx);
        u.classes.push_back(cls);
        u.class_index.emplace(key.text, idx);

        if (u.group == SymmetryKind::none) {
            if (!fits_window(f)) throw std::invalid_argument("figure does not fit the window");
            u.placements.push_back(f);
            u.placement_class.push_back(idx);
        } else {
            for (const Figure& image : group_images(key.rep, u.group)) {
                std::vector<int> extent(f.nu, 0);
                for (const Cell& c : image.cells)
                    for (int i = 0; i < f.nu; ++i) extent[i] = std::max(extent[i], c[i] + 1);
                bool fits = true;
                for (int i = 0; i < f.nu; ++i)
                    if (extent[i] > u.window[i]) fits = false;
                if (!fits) continue;
                Cell offset(f.nu, 0);
                for (;;) {
                    u.placements.push_back(translate(image, offset));
                    u.placement_class.push_back(idx);
                    int i = 0;
                    while (i < f.nu && ++offset[i] > u.window[i] - extent[i]) offset[i++] = 0;
                    if (i == f.nu) break;
                }
            }
        }
        if (static_cast<int>(u.placements.size()) > opts.max_placements) budget_hit = true;
        return idx;
    }

    void run_closure() {
        size_t done = 0;  // placements[0..done) already paired with each other
        int round = 0;
        while (done < u.placements.size() && !budget_hit) {
            if (round >= opts.max_rounds) {
                budget_hit = true;
                break;
            }
            const size_t hi = u.placements.size();
            for (size_t i = 0; i < hi && !budget_hit; ++i) {
                for (size_t j = std::max(i + 1, done); j < hi && !budget_hit; ++j) {
                    // by value: add() below grows the placement vector
                    const Figure p = u.placements[i];
                    const Figure q = u.placements[j];
                    auto inter = intersect(p, q);
                    if (inter) {
                        Figure uni = union_of(p, q);
                        if (uni.volume() <= opts.max_cells) {
                            add(uni);
                            if (!budget_hit) add(*inter);
                        }
                    } else if (adjacent(p, q)) {
                        Figure uni = union_of(p, q);
                        if (uni.volume() <= opts.max_cells) add(uni);
                    }
                }
            }
            done = hi;
            ++round;
        }
        u.complete = !budget_hit;
    }

    void compute_nested() {
        const size_t n = u.classes.size();
        u.nested_.assign(n, std::vector<bool>(n, false));
        for (size_t c = 0; c < n; ++c) u.nested_[c][c] = true;
        for (size_t i = 0; i < u.placements.size(); ++i) {
            for (size_t j = 0; j < u.placements.size(); ++j) {
                int ci = u.placement_class[i], cj = u.placement_class[j];
                if (u.nested_[ci][cj]) continue;
                if (u.placements[i].volume() >= u.placements[j].volume()) continue;
                if (is_subset(u.placements[i], u.placements[j])) u.nested_[ci][cj] = true;
            }
        }
    }

    RegionUniverse finish() {
        compute_nested();
        return std::move(u);
    }
};

}  // namespace

RegionUniverse close_universe(const std::vector<Figure>& seeds, const std::vector<int>& window,
                              SymmetryKind group, const CloseOptions& opts) {
    if (seeds.empty()) throw std::invalid_argument("close_universe: no seeds");
    const int nu = seeds.front().nu;
    if (static_cast<int>(window.size()) != nu)
        throw std::invalid_argument("close_universe: window dimension mismatch");
    for (int w : window)
        if (w < 1) throw std::invalid_argument("close_universe: window extents must be positive");
    Builder b(group, window, opts);
    for (const Figure& s : seeds) {
        if (s.nu != nu) throw std::invalid_argument("close_universe: seeds of mixed dimension");
        size_t before = b.u.placements.size();
        if (b.add(s) < 0 || b.u.placements.size() == before)
            throw std::invalid_argument("close_universe: seed does not fit in window");
    }
    b.run_closure();
    return b.finish();
}

RegionUniverse chain_universe(int n) {
    if (n < 1) throw std::invalid_argument("chain_universe: n must be >= 1");
    CloseOptions opts;
    opts.max_cells = n;
    opts.max_rounds = n + 1;
    opts.max_classes = std::max(64, n + 8);
    opts.max_placements = std::max(1024, n * (n + 1));
    return close_universe({box({1})}, {n}, SymmetryKind::translations, opts);
}

RegionUniverse box_universe(const std::vector<int>& bounds, SymmetryKind group) {
    for (int b : bounds)
        if (b < 1) throw std::invalid_argument("box_universe: bounds must be positive");
    std::vector<Figure> seeds;
    std::vector<int> sides(bounds.size(), 1);
    for (;;) {
        seeds.push_back(box(sides));
        size_t i = 0;
        while (i < sides.size() && ++sides[i] > bounds[i]) sides[i++] = 1;
        if (i == sides.size()) break;
    }
    CloseOptions opts;
    opts.max_rounds = 0;  // boxes only, no closure
    int cells = 1;
    for (int b : bounds) cells *= b;
    opts.max_cells = cells;
    opts.max_classes = static_cast<int>(seeds.size()) + 1;
    opts.max_placements = 100000;
    Builder b(group, bounds, opts);
    for (const Figure& s : seeds) b.add(s);
    b.u.complete = true;
    return b.finish();
}

ScaledBoxPair scale_rational_boxes(const std::vector<Rational>& inner,
                                   const std::vector<Rational>& outer) {
    if (inner.empty() || inner.size() != outer.size())
        throw std::invalid_argument("scaled boxes: side lists must be non-empty and of equal dimension");
    long scale = 1;
    for (const std::vector<Rational>* sides : {&inner, &outer})
        for (const Rational& s : *sides) {
            if (s.sign() <= 0) throw std::invalid_argument("scaled boxes: sides must be positive");
            long den = s.den_long();
            long g = std::gcd(scale, den);
            if (scale > std::numeric_limits<long>::max() / (den / g))
                throw std::overflow_error("scaled boxes: denominator blow-up");
            scale = scale / g * den;
        }
    auto lattice_sides = [&](const std::vector<Rational>& sides) {
        std::vector<int> out;
        for (const Rational& s : sides) {
            Rational scaled = s * Rational(scale);
            long v = scaled.num_long();  // integral: scale clears every denominator
            if (v > 1'000'000) throw std::invalid_argument("scaled boxes: lattice side too large");
            out.push_back(static_cast<int>(v));
        }
        return out;
    };
    std::vector<int> a = lattice_sides(inner), b = lattice_sides(outer);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            throw std::invalid_argument("scaled boxes: inner box does not fit inside the outer box");
    ScaledBoxPair pair;
    pair.inner = box(a);
    pair.outer = box(b);
    pair.scale = scale;
    return pair;
}

RegionUniverse subset_universe(const Figure& f) {
    const int n = f.volume();
    if (n > 16) throw std::invalid_argument("subset_universe: figure too large (max 16 cells)");
    CloseOptions opts;
    opts.max_cells = n;
    opts.max_rounds = 0;
    opts.max_classes = (1 << n);
    opts.max_placements = (1 << n);
    std::vector<int> window(f.nu, 0);
    for (const Cell& c : f.cells)
        for (int i = 0; i < f.nu; ++i) window[i] = std::max(window[i], c[i] + 1);
    for (const Cell& c : f.cells)
        for (int i = 0; i < f.nu; ++i)
            if (c[i] < 0) throw std::invalid_argument("subset_universe: cells must be non-negative");
    Builder b(SymmetryKind::none, window, opts);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Cell> cells;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) cells.push_back(f.cells[i]);
        int idx = b.add(make_figure(f.nu, std::move(cells)));
        b.u.classes[idx].name = "s" + std::to_string(mask);
    }
    b.u.complete = true;
    return b.finish();
}

RegionUniverse ring_universe(int n) {
    if (n < 1) throw std::invalid_argument("ring_universe: n must be >= 1");
    RegionUniverse u;
    u.is_abstract = true;
    u.group = SymmetryKind::translations;
    for (int k = 1; k <= n; ++k) {
        UniverseClass cls;
        cls.volume = Rational(k);
        cls.name = "A" + std::to_string(k);
        cls.arc_length = k;
        u.classes.push_back(cls);
    }
    auto idx = [](int k) { return k - 1; };
    for (int q = 1; q <= n; ++q)
        for (int r = q; q + r <= n; ++r)
            u.relations.push_back({idx(q), idx(r), idx(q + r), -1});
    for (int q = 1; q <= n; ++q)
        for (int t = q; t <= n; ++t)
            for (int r = 1; q + r + t <= n; ++r)
                u.relations.push_back({idx(q + r), idx(r + t), idx(q + r + t), idx(r)});
    u.nested_.assign(n, std::vector<bool>(n, false));
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) u.nested_[idx(a)][idx(b)] = true;
    return u;
}

RegionUniverse load_abstract_universe(const std::string& json_text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("abstract universe: bad JSON: ") + e.what());
    }
    if (!doc.contains("regions") || !doc["regions"].is_object())
        throw std::invalid_argument("abstract universe: missing 'regions' object");
    if (!doc.contains("relations") || !doc["relations"].is_array())
        throw std::invalid_argument("abstract universe: missing 'relations' array");

    RegionUniverse u;
    u.is_abstract = true;
    u.group = SymmetryKind::translations;

    auto parse_vol = [](const nlohmann::ordered_json& v) -> Rational {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        throw std::invalid_argument("abstract universe: 'vol' must be an integer or a rational string");
    };

    std::unordered_map<std::string, int> region_class;  // region name -> class index
    for (auto& [name, spec] : doc["regions"].items()) {
        if (!spec.contains("vol") || !spec.contains("class"))
            throw std::invalid_argument("abstract universe: region '" + name + "' needs 'vol' and 'class'");
        Rational vol = parse_vol(spec["vol"]);
        if (vol.sign() <= 0)
            throw std::invalid_argument("abstract universe: region '" + name + "' has non-positive volume");
        std::string label = spec["class"].get<std::string>();
        int cls = -1;
        for (size_t i = 0; i < u.classes.size(); ++i)
            if (u.classes[i].name == label) cls = static_cast<int>(i);
        if (cls < 0) {
            UniverseClass c;
            c.volume = vol;
            c.name = label;
            if (spec.contains("arc")) c.arc_length = spec["arc"].get<int>();
            cls = static_cast<int>(u.classes.size());
            u.classes.push_back(c);
        } else if (u.classes[cls].volume != vol) {
            throw std::invalid_argument("abstract universe: class '" + label + "' declared with two volumes");
        }
        region_class[name] = cls;
    }

    auto resolve = [&](const std::string& name) -> int {
        auto it = region_class.find(name);
        if (it == region_class.end())
            throw std::invalid_argument("abstract universe: unresolved region name '" + name + "'");
        return it->second;
    };

    for (const auto& rel : doc["relations"]) {
        if (!rel.is_array() || (rel.size() != 3 && rel.size() != 4))
            throw std::invalid_argument("abstract universe: relation must be [p,q,union] or [p,q,union,inter]");
        AbstractRelation r;
        r.p = resolve(rel[0].get<std::string>());
        r.q = resolve(rel[1].get<std::string>());
        r.u = resolve(rel[2].get<std::string>());
        r.i = -1;
        if (rel.size() == 4 && !rel[3].is_null()) {
            std::string name = rel[3].get<std::string>();
            if (!name.empty()) r.i = resolve(name);
        }
        Rational lhs = u.classes[r.p].volume + u.classes[r.q].volume;
        Rational rhs = u.classes[r.u].volume + (r.i >= 0 ? u.classes[r.i].volume : Rational(0));
        if (lhs != rhs)
            throw std::invalid_argument("abstract universe: volumes break inclusion-exclusion in relation [" +
                                        rel[0].get<std::string>() + "," + rel[1].get<std::string>() + "," +
                                        rel[2].get<std::string>() + "]");
        u.relations.push_back(r);
    }

    const size_t n = u.classes.size();
    u.nested_.assign(n, std::vector<bool>(n, false));
    for (size_t c = 0; c < n; ++c) u.nested_[c][c] = true;
    for (const AbstractRelation& r : u.relations) {
        u.nested_[r.p][r.u] = true;
        u.nested_[r.q][r.u] = true;
        if (r.i >= 0) {
            u.nested_[r.i][r.p] = true;
            u.nested_[r.i][r.q] = true;
        }
    }
    for (size_t k = 0; k < n; ++k)  // transitive closure
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                if (u.nested_[a][k] && u.nested_[k][b]) u.nested_[a][b] = true;
    return u;
}

namespace {

std::string constraint_dedup_key(Constraint::Kind kind, const LinearForm& coeffs) {
    std::ostringstream os;
    os << to_string(kind) << '|';
    for (const auto& [idx, c] : coeffs) os << idx << ':' << c.str() << ',';
    return os.str();
}

}  // namespace

std::vector<Constraint> generate_constraints(const RegionUniverse& u) {
    std::vector<Constraint> out;
    std::unordered_set<std::string> seen;

    auto push = [&](Constraint::Kind kind, LinearForm coeffs, std::string provenance) {
        coeffs = normalize_form(std::move(coeffs));
        if (coeffs.empty()) return;
        std::string key = constraint_dedup_key(kind, coeffs);
        if (!seen.insert(key).second) return;
        out.push_back({kind, std::move(coeffs), std::move(provenance)});
    };

    for (size_t c = 0; c < u.classes.size(); ++c)
        push(Constraint::Kind::POS, {{static_cast<int>(c), Rational(1)}}, u.classes[c].name);

    if (u.is_abstract) {
        for (const AbstractRelation& r : u.relations) {
            LinearForm v = {{r.p, Rational(1)}, {r.q, Rational(1)}, {r.u, Rational(-1)}};
            std::string prov = u.name_of(r.p) + "+" + u.name_of(r.q) + "->" + u.name_of(r.u);
            if (r.i >= 0) {
                v.emplace_back(r.i, Rational(-1));
                push(Constraint::Kind::SSA, std::move(v), prov + "/" + u.name_of(r.i));
            } else {
                push(Constraint::Kind::SA, std::move(v), prov);
            }
        }
        return out;
    }

    auto offset_text = [](const Figure& f) {
        Cell lo = f.cells.front();
        for (const Cell& c : f.cells)
            for (size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], c[i]);
        std::string s = "@(";
        for (size_t i = 0; i < lo.size(); ++i) s += (i ? "," : "") + std::to_string(lo[i]);
        return s + ")";
    };

    const size_t np = u.placements.size();
    for (size_t i = 0; i < np; ++i) {
        for (size_t j = i + 1; j < np; ++j) {
            const Figure& p = u.placements[i];
            const Figure& q = u.placements[j];
            const int cp = u.placement_class[i], cq = u.placement_class[j];
            auto inter = intersect(p, q);
            if (inter) {
                int ci = u.find_class(*inter);
                if (ci < 0) continue;
                int cu = u.find_class(union_of(p, q));
                if (cu < 0) continue;
                push(Constraint::Kind::SSA,
                     {{cp, Rational(1)}, {cq, Rational(1)}, {cu, Rational(-1)}, {ci, Rational(-1)}},
                     u.name_of(cp) + offset_text(p) + " x " + u.name_of(cq) + offset_text(q));
            } else {
                int cu = u.find_class(union_of(p, q));
                if (cu < 0) continue;
                push(Constraint::Kind::SA,
                     {{cp, Rational(1)}, {cq, Rational(1)}, {cu, Rational(-1)}},
                     u.name_of(cp) + offset_text(p) + " | " + u.name_of(cq) + offset_text(q));
            }
        }
    }
    return out;
}

std::vector<Constraint> without_positivity(std::vector<Constraint> cons) {
    std::erase_if(cons, [](const Constraint& c) { return c.kind == Constraint::Kind::POS; });
    return cons;
}

Target target_mean_monotone(int a, int b, const RegionUniverse& u) {
    if (!u.nested(a, b))
        throw std::invalid_argument("mean target: " + u.name_of(a) + " is not a subfigure of " + u.name_of(b));
    Target t;
    t.coeffs = normalize_form({{a, u.classes[b].volume}, {b, -u.classes[a].volume}});
    t.description = "mean(" + u.name_of(b) + ") <= mean(" + u.name_of(a) + ")";
    return t;
}

Target target_entropy_monotone(int a, int b, const RegionUniverse& u) {
    if (!u.nested(a, b))
        throw std::invalid_argument("entropy target: " + u.name_of(a) + " is not a subfigure of " + u.name_of(b));
    Target t;
    t.coeffs = normalize_form({{b, Rational(1)}, {a, Rational(-1)}});
    t.description = "S(" + u.name_of(a) + ") <= S(" + u.name_of(b) + ")";
    return t;
}

Target target_general(LinearForm coeffs, std::string description, const RegionUniverse& u) {
    if (coeffs.empty()) throw std::invalid_argument("general target: empty coefficient list");
    for (const auto& [idx, c] : coeffs)
        if (idx < 0 || idx >= static_cast<int>(u.classes.size()))
            throw std::invalid_argument("general target: class index out of range");
    Target t;
    t.coeffs = normalize_form(std::move(coeffs));
    t.description = std::move(description);
    return t;
}

Target target_average_subfigures(int cls, const RegionUniverse& u) {
    if (u.is_abstract) throw std::invalid_argument("average-subfigure target needs a concrete universe");
    const Figure& rep = u.classes[cls].key.rep;
    const int n = rep.volume();
    if (n < 2) throw std::invalid_argument("average-subfigure target needs at least two cells");
    LinearForm v;
    for (int j = 0; j < n; ++j) {
        std::vector<Cell> cells;
        for (int i = 0; i < n; ++i)
            if (i != j) cells.push_back(rep.cells[i]);
        int sub = u.find_class(make_figure(rep.nu, std::move(cells)));
        if (sub < 0)
            throw std::runtime_error("average-subfigure target: a one-cell-deleted subfigure of " +
                                     u.name_of(cls) + " is not in the universe");
        v.emplace_back(sub, Rational(1));
    }
    v.emplace_back(cls, Rational(-(n - 1)));
    Target t;
    t.coeffs = normalize_form(std::move(v));
    t.description = "avg subfigure bound: " + u.name_of(cls);
    return t;
}

std::vector<std::pair<int, int>> nested_pairs(const RegionUniverse& u) {
    std::vector<std::pair<int, int>> out;
    for (size_t a = 0; a < u.classes.size(); ++a)
        for (size_t b = 0; b < u.classes.size(); ++b)
            if (a != b && u.nested_[a][b]) out.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return out;
}

}  // namespace entrolab
