#include "entrolab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "entrolab/rng.hpp"

namespace entrolab {

namespace {

constexpr double kSumTol = 1e-12;
constexpr size_t kMaxTableSize = 1u << 20;

size_t checked_pow(int base, int exp, size_t cap, const char* what) {
    size_t v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= static_cast<size_t>(base);
        if (v > cap) throw std::invalid_argument(std::string(what) + ": state space exceeds the size cap");
    }
    return v;
}

}  // namespace

const char* to_string(Topology t) {
    switch (t) {
        case Topology::line: return "line";
        case Topology::ring: return "ring";
        case Topology::torus: return "torus";
    }
    return "?";
}

Topology topology_from_string(const std::string& s) {
    if (s == "line") return Topology::line;
    if (s == "ring") return Topology::ring;
    if (s == "torus") return Topology::torus;
    throw std::invalid_argument("unknown topology '" + s + "' (expected line|ring|torus)");
}

void ProbTable::validate() const {
    if (alphabet < 2) throw std::invalid_argument("prob table: alphabet must be >= 2");
    if (sites < 1) throw std::invalid_argument("prob table: needs at least one site");
    if (topo == Topology::torus && m1 * m2 != sites)
        throw std::invalid_argument("prob table: torus extents do not match the site count");
    size_t expected = checked_pow(alphabet, sites, kMaxTableSize, "prob table");
    if (probs.size() != expected) throw std::invalid_argument("prob table: wrong number of entries");
    double sum = 0.0;
    for (double p : probs) {
        if (p < -1e-15) throw std::invalid_argument("prob table: negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTol) throw std::invalid_argument("prob table: entries do not sum to 1");
}

double entropy_of_distribution(std::span<const double> p) {
    double s = 0.0;
    for (double v : p)
        if (v > 0.0) s -= v * std::log(v);
    return s;
}

double shannon_entropy(const ProbTable& p, const std::vector<int>& cells) {
    if (cells.empty()) throw std::invalid_argument("shannon_entropy: empty site set");
    std::vector<int> sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("shannon_entropy: duplicate site");
    for (int s : sorted)
        if (s < 0 || s >= p.sites) throw std::out_of_range("shannon_entropy: site out of range");

    std::vector<size_t> stride(p.sites);
    size_t v = 1;
    for (int s = 0; s < p.sites; ++s, v *= p.alphabet) stride[s] = v;

    size_t nbuckets = 1;
    for (size_t i = 0; i < sorted.size(); ++i) nbuckets *= p.alphabet;
    std::vector<double> q(nbuckets, 0.0);
    for (size_t cfg = 0; cfg < p.probs.size(); ++cfg) {
        size_t bucket = 0, mult = 1;
        for (int s : sorted) {
            bucket += (cfg / stride[s]) % p.alphabet * mult;
            mult *= p.alphabet;
        }
        q[bucket] += p.probs[cfg];
    }
    return entropy_of_distribution(q);
}

std::vector<std::vector<int>> table_automorphisms(const ProbTable& p, SymmetryKind group) {
    std::vector<std::vector<int>> perms;
    const int n = p.sites;
    auto identity = [&] {
        std::vector<int> e(n);
        std::iota(e.begin(), e.end(), 0);
        return e;
    };
    if (group == SymmetryKind::none) return {identity()};

    switch (p.topo) {
        case Topology::line:
            perms.push_back(identity());
            if (group == SymmetryKind::full) {
                std::vector<int> r(n);
                for (int i = 0; i < n; ++i) r[i] = n - 1 - i;
                perms.push_back(std::move(r));
            }
            break;
        case Topology::ring:
            for (int k = 0; k < n; ++k) {
                std::vector<int> s(n);
                for (int i = 0; i < n; ++i) s[i] = (i + k) % n;
                perms.push_back(std::move(s));
            }
            if (group == SymmetryKind::full)
                for (int k = 0; k < n; ++k) {
                    std::vector<int> s(n);
                    for (int i = 0; i < n; ++i) s[i] = ((k - i) % n + n) % n;
                    perms.push_back(std::move(s));
                }
            break;
        case Topology::torus: {
            auto site = [&](int x, int y) { return ((x % p.m1 + p.m1) % p.m1) + p.m1 * ((y % p.m2 + p.m2) % p.m2); };
            struct Point { int a, b, c, d; };  // (x,y) -> (a x + b y, c x + d y)
            std::vector<Point> points = {{1, 0, 0, 1}};
            if (group == SymmetryKind::full) {
                points = {{1, 0, 0, 1}, {-1, 0, 0, 1}, {1, 0, 0, -1}, {-1, 0, 0, -1}};
                if (p.m1 == p.m2) {
                    points.push_back({0, 1, 1, 0});
                    points.push_back({0, -1, 1, 0});
                    points.push_back({0, 1, -1, 0});
                    points.push_back({0, -1, -1, 0});
                }
            }
            for (const Point& pt : points)
                for (int dx = 0; dx < p.m1; ++dx)
                    for (int dy = 0; dy < p.m2; ++dy) {
                        std::vector<int> s(n);
                        for (int x = 0; x < p.m1; ++x)
                            for (int y = 0; y < p.m2; ++y)
                                s[site(x, y)] = site(pt.a * x + pt.b * y + dx, pt.c * x + pt.d * y + dy);
                        perms.push_back(std::move(s));
                    }
            break;
        }
    }
    return perms;
}

void symmetrize(ProbTable& p, SymmetryKind group) {
    p.validate();
    auto perms = table_automorphisms(p, group);
    if (perms.size() <= 1) return;

    std::vector<size_t> stride(p.sites);
    size_t v = 1;
    for (int s = 0; s < p.sites; ++s, v *= p.alphabet) stride[s] = v;

    std::vector<double> acc(p.probs.size(), 0.0);
    std::vector<size_t> image(p.probs.size());
    for (const auto& perm : perms) {
        for (size_t cfg = 0; cfg < p.probs.size(); ++cfg) {
            size_t out = 0;
            size_t rest = cfg;
            for (int s = 0; s < p.sites; ++s) {
                out += rest % p.alphabet * stride[perm[s]];
                rest /= p.alphabet;
            }
            image[cfg] = out;
        }
        for (size_t cfg = 0; cfg < p.probs.size(); ++cfg) acc[image[cfg]] += p.probs[cfg];
    }
    const double inv = 1.0 / static_cast<double>(perms.size());
    for (size_t i = 0; i < acc.size(); ++i) p.probs[i] = acc[i] * inv;
}

ProbTable iid_table(int alphabet, int sites, Topology topo, int m1, int m2,
                    const std::vector<double>& site_dist) {
    if (static_cast<int>(site_dist.size()) != alphabet)
        throw std::invalid_argument("iid table: distribution size does not match alphabet");
    ProbTable p;
    p.alphabet = alphabet;
    p.sites = sites;
    p.topo = topo;
    p.m1 = m1;
    p.m2 = m2;
    size_t total = checked_pow(alphabet, sites, kMaxTableSize, "iid table");
    p.probs.assign(total, 1.0);
    for (size_t cfg = 0; cfg < total; ++cfg) {
        size_t rest = cfg;
        for (int s = 0; s < sites; ++s) {
            p.probs[cfg] *= site_dist[rest % alphabet];
            rest /= alphabet;
        }
    }
    p.validate();
    return p;
}

ProbTable random_table(int alphabet, int sites, Topology topo, int m1, int m2, uint64_t seed,
                       SymmetryKind group) {
    ProbTable p;
    p.alphabet = alphabet;
    p.sites = sites;
    p.topo = topo;
    p.m1 = m1;
    p.m2 = m2;
    size_t total = checked_pow(alphabet, sites, kMaxTableSize, "random table");
    p.probs.resize(total);
    Rng rng(seed);
    double sum = 0.0;
    for (double& v : p.probs) {
        v = -std::log(rng.uniform_pos());
        sum += v;
    }
    for (double& v : p.probs) v /= sum;
    symmetrize(p, group);
    return p;
}

MarkovChain1D make_markov(int alphabet, std::vector<double> transition,
                          std::optional<std::vector<double>> stationary) {
    if (alphabet < 2) throw std::invalid_argument("markov chain: alphabet must be >= 2");
    if (transition.size() != static_cast<size_t>(alphabet) * alphabet)
        throw std::invalid_argument("markov chain: transition matrix has wrong shape");
    for (int i = 0; i < alphabet; ++i) {
        double row = 0.0;
        for (int j = 0; j < alphabet; ++j) {
            double t = transition[static_cast<size_t>(i) * alphabet + j];
            if (t < 0.0) throw std::invalid_argument("markov chain: negative transition probability");
            row += t;
        }
        if (std::abs(row - 1.0) > kSumTol)
            throw std::invalid_argument("markov chain: row " + std::to_string(i) + " does not sum to 1");
    }
    MarkovChain1D c;
    c.alphabet = alphabet;
    c.transition = std::move(transition);
    if (stationary) {
        c.stationary = std::move(*stationary);
        if (c.stationary.size() != static_cast<size_t>(alphabet))
            throw std::invalid_argument("markov chain: stationary distribution has wrong size");
    } else {
        std::vector<double> pi(alphabet, 1.0 / alphabet), next(alphabet);
        for (int iter = 0; iter < 200000; ++iter) {
            double delta = 0.0;
            for (int j = 0; j < alphabet; ++j) {
                double v = 0.0;
                for (int i = 0; i < alphabet; ++i) v += pi[i] * c.t(i, j);
                next[j] = v;
            }
            for (int j = 0; j < alphabet; ++j) delta = std::max(delta, std::abs(next[j] - pi[j]));
            pi.swap(next);
            if (delta < 1e-16) break;
        }
        c.stationary = std::move(pi);
    }
    double sum = 0.0;
    for (double v : c.stationary) {
        if (v < -1e-15) throw std::invalid_argument("markov chain: negative stationary entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw std::invalid_argument("markov chain: stationary distribution does not sum to 1");
    for (int j = 0; j < alphabet; ++j) {
        double v = 0.0;
        for (int i = 0; i < alphabet; ++i) v += c.stationary[i] * c.t(i, j);
        if (std::abs(v - c.stationary[j]) > kSumTol)
            throw std::invalid_argument("markov chain: distribution is not stationary");
    }
    return c;
}

MarkovChain1D binary_flip_chain(double flip) {
    return make_markov(2, {1.0 - flip, flip, flip, 1.0 - flip}, std::vector<double>{0.5, 0.5});
}

double markov_conditional_entropy(const MarkovChain1D& c) {
    double h = 0.0;
    for (int i = 0; i < c.alphabet; ++i)
        for (int j = 0; j < c.alphabet; ++j) {
            double t = c.t(i, j);
            if (t > 0.0) h -= c.stationary[i] * t * std::log(t);
        }
    return h;
}

double markov_entropy(const MarkovChain1D& c, int n) {
    if (n < 1) throw std::invalid_argument("markov_entropy: n must be >= 1");
    return entropy_of_distribution(c.stationary) + (n - 1) * markov_conditional_entropy(c);
}

ProbTable markov_joint(const MarkovChain1D& c, int n) {
    ProbTable p;
    p.alphabet = c.alphabet;
    p.sites = n;
    p.topo = Topology::line;
    size_t total = checked_pow(c.alphabet, n, kMaxTableSize, "markov joint");
    p.probs.resize(total);
    for (size_t cfg = 0; cfg < total; ++cfg) {
        size_t rest = cfg;
        int prev = static_cast<int>(rest % c.alphabet);
        rest /= c.alphabet;
        double v = c.stationary[prev];
        for (int s = 1; s < n; ++s) {
            int cur = static_cast<int>(rest % c.alphabet);
            rest /= c.alphabet;
            v *= c.t(prev, cur);
            prev = cur;
        }
        p.probs[cfg] = v;
    }
    return p;
}

int DensityMatrix::dim() const {
    int d = 1;
    for (int i = 0; i < sites; ++i) d *= local_dim;
    return d;
}

void DensityMatrix::validate() const {
    const int d = dim();
    if (a.size() != static_cast<size_t>(d) * d) throw std::invalid_argument("density matrix: wrong storage size");
    if (static_cast<size_t>(d) > (1u << 12)) throw std::invalid_argument("density matrix: dimension cap exceeded");
    double herm = 0.0;
    std::complex<double> tr = 0.0;
    for (int i = 0; i < d; ++i) {
        tr += at(i, i);
        for (int j = i; j < d; ++j)
            herm = std::max(herm, std::abs(at(i, j) - std::conj(at(j, i))));
    }
    if (herm > 1e-12) throw std::invalid_argument("density matrix: not Hermitian within tolerance");
    if (std::abs(tr - 1.0) > 1e-12) throw std::invalid_argument("density matrix: trace is not 1");
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    if (keep_sorted.empty()) throw std::invalid_argument("partial_trace: keep set must be non-empty");
    if (std::adjacent_find(keep_sorted.begin(), keep_sorted.end()) != keep_sorted.end())
        throw std::invalid_argument("partial_trace: duplicate site");
    for (int s : keep_sorted)
        if (s < 0 || s >= rho.sites) throw std::out_of_range("partial_trace: site out of range");

    std::vector<int> traced;
    for (int s = 0; s < rho.sites; ++s)
        if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), s)) traced.push_back(s);

    const int d = rho.local_dim;
    std::vector<size_t> stride(rho.sites);
    size_t v = 1;
    for (int s = 0; s < rho.sites; ++s, v *= d) stride[s] = v;

    DensityMatrix out;
    out.sites = static_cast<int>(keep_sorted.size());
    out.local_dim = d;
    const size_t dk = checked_pow(d, out.sites, 1u << 12, "partial_trace");
    size_t dt = 1;
    for (size_t i = 0; i < traced.size(); ++i) dt *= d;
    out.a.assign(dk * dk, 0.0);

    auto expand = [&](size_t packed, const std::vector<int>& sites_list) {
        size_t idx = 0;
        for (int s : sites_list) {
            idx += packed % d * stride[s];
            packed /= d;
        }
        return idx;
    };

    const int full_dim = rho.dim();
    for (size_t rk = 0; rk < dk; ++rk) {
        size_t base_r = expand(rk, keep_sorted);
        for (size_t ck = 0; ck < dk; ++ck) {
            size_t base_c = expand(ck, keep_sorted);
            std::complex<double> sum = 0.0;
            for (size_t n = 0; n < dt; ++n) {
                size_t off = expand(n, traced);
                sum += rho.a[(base_r + off) * full_dim + (base_c + off)];
            }
            out.a[rk * dk + ck] = sum;
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(int dim, std::vector<std::complex<double>> a) {
    auto at = [&](int i, int j) -> std::complex<double>& { return a[static_cast<size_t>(i) * dim + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < dim; ++p)
            for (int q = p + 1; q < dim; ++q) off2 += 2.0 * std::norm(at(p, q));
        if (std::sqrt(off2) <= 1e-13) break;

        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                const std::complex<double> apq = at(p, q);
                const double m = std::abs(apq);
                if (m == 0.0) continue;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(tau * tau + 1.0))
                                            : 1.0 / (tau - std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const std::complex<double> u = apq / m;  // phase of the pivot entry

                for (int r = 0; r < dim; ++r) {
                    if (r == p || r == q) continue;
                    const std::complex<double> arp = at(r, p);
                    const std::complex<double> arq = at(r, q);
                    at(r, p) = c * arp - s * std::conj(u) * arq;
                    at(r, q) = s * u * arp + c * arq;
                    at(p, r) = std::conj(at(r, p));
                    at(q, r) = std::conj(at(r, q));
                }
                at(p, p) = app - t * m;
                at(q, q) = aqq + t * m;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
        }
    }
    std::vector<double> eig(dim);
    for (int i = 0; i < dim; ++i) eig[i] = at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const int d = rho.dim();
    double herm = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) herm = std::max(herm, std::abs(rho.at(i, j) - std::conj(rho.at(j, i))));
    if (herm > 1e-12)
        throw std::invalid_argument("von_neumann_entropy: matrix not Hermitian within tolerance");
    std::vector<double> eig = hermitian_eigenvalues(d, rho.a);
    double s = 0.0;
    for (double lambda : eig)
        if (lambda > 1e-14) s -= lambda * std::log(lambda);
    return s;
}

DensityMatrix ghz_state(int n) {
    if (n < 2 || n > 12) throw std::invalid_argument("ghz_state: n must be in [2, 12]");
    DensityMatrix rho;
    rho.sites = n;
    rho.local_dim = 2;
    const size_t dim = 1u << n;
    rho.a.assign(dim * dim, 0.0);
    const size_t lo = 0, hi = dim - 1;
    rho.a[lo * dim + lo] = 0.5;
    rho.a[lo * dim + hi] = 0.5;
    rho.a[hi * dim + lo] = 0.5;
    rho.a[hi * dim + hi] = 0.5;
    return rho;
}

DensityMatrix random_ring_state(int qubits, uint64_t seed, SymmetryKind group) {
    if (qubits < 1 || qubits > 10) throw std::invalid_argument("random_ring_state: qubits must be in [1, 10]");
    const size_t dim = 1u << qubits;
    Rng rng(seed);
    std::vector<std::complex<double>> g(dim * dim);
    for (auto& v : g) v = {rng.normal(), rng.normal()};

    DensityMatrix rho;
    rho.sites = qubits;
    rho.local_dim = 2;
    rho.a.assign(dim * dim, 0.0);
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) {
            std::complex<double> sum = 0.0;
            for (size_t k = 0; k < dim; ++k) sum += g[i * dim + k] * std::conj(g[j * dim + k]);
            rho.a[i * dim + j] = sum;
        }

    // basis permutations of the ring's translations (and reflections)
    std::vector<std::vector<size_t>> basis_perms;
    auto add_site_perm = [&](auto site_map) {
        std::vector<size_t> bp(dim);
        for (size_t b = 0; b < dim; ++b) {
            size_t out = 0;
            for (int s = 0; s < qubits; ++s)
                if (b >> s & 1) out |= 1u << site_map(s);
            bp[b] = out;
        }
        basis_perms.push_back(std::move(bp));
    };
    for (int k = 0; k < qubits; ++k) add_site_perm([&](int s) { return (s + k) % qubits; });
    if (group == SymmetryKind::full)
        for (int k = 0; k < qubits; ++k) add_site_perm([&](int s) { return ((k - s) % qubits + qubits) % qubits; });

    std::vector<std::complex<double>> acc(dim * dim, 0.0);
    for (const auto& bp : basis_perms)
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) acc[bp[i] * dim + bp[j]] += rho.a[i * dim + j];
    const double inv = 1.0 / static_cast<double>(basis_perms.size());
    for (size_t i = 0; i < acc.size(); ++i) rho.a[i] = acc[i] * inv;

    // exact hermitization and normalization against float drift
    double tr = 0.0;
    for (size_t i = 0; i < dim; ++i) tr += rho.a[i * dim + i].real();
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = i; j < dim; ++j) {
            std::complex<double> v = 0.5 * (rho.a[i * dim + j] + std::conj(rho.a[j * dim + i])) / tr;
            rho.a[i * dim + j] = v;
            rho.a[j * dim + i] = std::conj(v);
        }
    return rho;
}

int SiteGeometry::site_of(const Cell& c) const {
    switch (topo) {
        case Topology::line: {
            if (c.size() != 1) throw std::invalid_argument("line geometry embeds 1-D cells only");
            if (c[0] < 0 || c[0] >= sites) throw std::out_of_range("cell outside the line");
            return c[0];
        }
        case Topology::ring: {
            if (c.size() != 1) throw std::invalid_argument("ring geometry embeds 1-D cells only");
            return (c[0] % sites + sites) % sites;
        }
        case Topology::torus: {
            if (c.size() != 2) throw std::invalid_argument("torus geometry embeds 2-D cells only");
            int x = (c[0] % m1 + m1) % m1;
            int y = (c[1] % m2 + m2) % m2;
            return x + m1 * y;
        }
    }
    throw std::logic_error("bad topology");
}

namespace {

std::vector<int> embed_figure(const Figure& f, const SiteGeometry& g, bool normalize = true) {
    // canonical representatives are translated to the bounding-box origin so
    // line embeddings start at 0; placements keep their window position
    Cell lo(f.cells.front().size(), 0);
    if (normalize) {
        lo = f.cells.front();
        for (const Cell& c : f.cells)
            for (size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], c[i]);
    }
    std::vector<int> sites;
    for (const Cell& c : f.cells) {
        Cell shifted(c.size());
        for (size_t i = 0; i < c.size(); ++i) shifted[i] = c[i] - lo[i];
        sites.push_back(g.site_of(shifted));
    }
    std::sort(sites.begin(), sites.end());
    if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
        throw std::invalid_argument("figure wraps onto itself in this geometry");
    return sites;
}

class ClassicalModel final : public StateModel {
public:
    explicit ClassicalModel(ProbTable table) : table_(std::move(table)) { table_.validate(); }

    double region_entropy(const std::vector<int>& sites) const override {
        return shannon_entropy(table_, sites);
    }
    SiteGeometry geometry() const override { return {table_.topo, table_.sites, table_.m1, table_.m2}; }
    std::string describe() const override {
        std::ostringstream os;
        os << "classical " << to_string(table_.topo) << " a=" << table_.alphabet << " sites=" << table_.sites;
        return os.str();
    }

private:
    ProbTable table_;
};

class MarkovModel final : public StateModel {
public:
    MarkovModel(MarkovChain1D chain, int sites) : chain_(std::move(chain)), sites_(sites) {
        if (sites < 1) throw std::invalid_argument("markov model: needs at least one site");
    }

    double region_entropy(const std::vector<int>& sites) const override {
        if (sites.empty()) throw std::invalid_argument("markov model: empty site set");
        std::vector<int> sorted = sites;
        std::sort(sorted.begin(), sorted.end());
        bool contiguous = true;
        for (size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] != sorted[i - 1] + 1) contiguous = false;
        if (contiguous) return markov_entropy(chain_, static_cast<int>(sorted.size()));

        // gap figures: enumerate the joint over the covering span and marginalize
        const int span = sorted.back() - sorted.front() + 1;
        ProbTable joint = markov_joint(chain_, span);
        std::vector<int> rel;
        for (int s : sorted) rel.push_back(s - sorted.front());
        return shannon_entropy(joint, rel);
    }
    SiteGeometry geometry() const override { return {Topology::line, sites_, 0, 0}; }
    std::string describe() const override {
        return "markov line a=" + std::to_string(chain_.alphabet) + " sites=" + std::to_string(sites_);
    }

private:
    MarkovChain1D chain_;
    int sites_;
};

class QuantumRingModel final : public StateModel {
public:
    explicit QuantumRingModel(DensityMatrix rho) : rho_(std::move(rho)) { rho_.validate(); }

    double region_entropy(const std::vector<int>& sites) const override {
        if (static_cast<int>(sites.size()) == rho_.sites) return von_neumann_entropy(rho_);
        return von_neumann_entropy(partial_trace(rho_, sites));
    }
    SiteGeometry geometry() const override { return {Topology::ring, rho_.sites, 0, 0}; }
    std::string describe() const override {
        return "quantum ring d=" + std::to_string(rho_.local_dim) + " sites=" + std::to_string(rho_.sites);
    }

private:
    DensityMatrix rho_;
};

}  // namespace

std::unique_ptr<StateModel> classical_model(ProbTable table) {
    return std::make_unique<ClassicalModel>(std::move(table));
}

std::unique_ptr<StateModel> markov_model(const MarkovChain1D& chain, int sites) {
    return std::make_unique<MarkovModel>(chain, sites);
}

std::unique_ptr<StateModel> quantum_ring_model(DensityMatrix rho) {
    return std::make_unique<QuantumRingModel>(std::move(rho));
}

EmbeddingMap build_embedding(const RegionUniverse& u, const SiteGeometry& g) {
    EmbeddingMap emb(u.classes.size());
    for (size_t c = 0; c < u.classes.size(); ++c) {
        const UniverseClass& cls = u.classes[c];
        try {
            if (u.is_abstract) {
                if (!cls.arc_length)
                    throw std::invalid_argument("abstract class without arc data");
                if (g.topo != Topology::ring)
                    throw std::invalid_argument("arc classes need a ring geometry");
                if (*cls.arc_length > g.sites)
                    throw std::invalid_argument("arc longer than the ring");
                std::vector<int> sites(*cls.arc_length);
                std::iota(sites.begin(), sites.end(), 0);
                emb[c] = std::move(sites);
            } else {
                emb[c] = embed_figure(cls.key.rep, g);
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("class '" + cls.name + "' not embeddable: " + e.what());
        }
    }
    return emb;
}

EntropyTable entropy_table(const StateModel& model, const RegionUniverse& u, const EmbeddingMap& emb) {
    if (emb.size() != u.classes.size())
        throw std::invalid_argument("entropy_table: embedding does not cover the universe");
    EntropyTable t;
    t.values.resize(u.classes.size());
    for (size_t c = 0; c < u.classes.size(); ++c) t.values[c] = model.region_entropy(emb[c]);
    return t;
}

double AxiomCheckReport::worst_violation() const {
    return std::max({0.0, -min_margin_pos, -min_margin_sa, -min_margin_ssa});
}

AxiomCheckReport check_axioms(const EntropyTable& table, const RegionUniverse& u,
                              const std::vector<Constraint>& constraints) {
    if (table.values.size() != u.classes.size())
        throw std::invalid_argument("check_axioms: table does not cover the universe");
    AxiomCheckReport report;
    for (size_t i = 0; i < constraints.size(); ++i) {
        const Constraint& g = constraints[i];
        double margin = 0.0;
        for (const auto& [cls, coeff] : g.coeffs) margin += coeff.to_double() * table.values[cls];
        auto update = [&](double& slot, int& worst) {
            if (worst < 0 || margin < slot) {
                slot = margin;
                worst = static_cast<int>(i);
            }
        };
        switch (g.kind) {
            case Constraint::Kind::POS: update(report.min_margin_pos, report.worst_pos); break;
            case Constraint::Kind::SA: update(report.min_margin_sa, report.worst_sa); break;
            case Constraint::Kind::SSA: update(report.min_margin_ssa, report.worst_ssa); break;
        }
    }
    return report;
}

double max_congruence_spread(const StateModel& model, const RegionUniverse& u) {
    const SiteGeometry g = model.geometry();
    double worst = 0.0;
    std::vector<double> lo(u.classes.size(), 0.0), hi(u.classes.size(), 0.0);
    std::vector<bool> seen(u.classes.size(), false);
    for (size_t p = 0; p < u.placements.size(); ++p) {
        double s = model.region_entropy(embed_figure(u.placements[p], g, /*normalize=*/false));
        int c = u.placement_class[p];
        if (!seen[c]) {
            lo[c] = hi[c] = s;
            seen[c] = true;
        } else {
            lo[c] = std::min(lo[c], s);
            hi[c] = std::max(hi[c], s);
        }
    }
    for (size_t c = 0; c < u.classes.size(); ++c)
        if (seen[c]) worst = std::max(worst, hi[c] - lo[c]);
    return worst;
}

double evaluate_target(const Target& t, const EntropyTable& table) {
    double margin = 0.0;
    for (const auto& [cls, coeff] : t.coeffs) margin += coeff.to_double() * table.values[cls];
    return margin;
}

}  // namespace entrolab
