#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entrolab/universe.hpp"

namespace entrolab {

enum class Topology { line, ring, torus };

const char* to_string(Topology t);
Topology topology_from_string(const std::string& s);

/// Full joint distribution of a classical lattice state on a finite set of
/// sites. Configurations are indexed with site 0 as the least significant
/// base-`alphabet` digit.
struct ProbTable {
    int alphabet = 2;
    int sites = 0;
    Topology topo = Topology::line;
    int m1 = 0, m2 = 0;  // torus extents (m1 * m2 == sites)
    std::vector<double> probs;

    void validate() const;  // sizes, normalization, non-negativity
};

/// Marginal Shannon entropy (nats) of the given sites; 0*log 0 := 0.
double shannon_entropy(const ProbTable& p, const std::vector<int>& cells);

/// Site permutations generated by the topology's translations, plus the
/// compatible reflections/rotations when `group` is `full`.
std::vector<std::vector<int>> table_automorphisms(const ProbTable& p, SymmetryKind group);

/// Averages the table over its automorphism group, making the state exactly
/// invariant under it.
void symmetrize(ProbTable& p, SymmetryKind group);

ProbTable iid_table(int alphabet, int sites, Topology topo, int m1, int m2,
                    const std::vector<double>& site_dist);

/// Seeded random table (deterministic across platforms), already symmetrized.
ProbTable random_table(int alphabet, int sites, Topology topo, int m1, int m2, uint64_t seed,
                       SymmetryKind group);

/// Stationary finite-state Markov chain: row-stochastic transition matrix and
/// its stationary distribution.
struct MarkovChain1D {
    int alphabet = 2;
    std::vector<double> transition;  // row-major alphabet x alphabet
    std::vector<double> stationary;

    double t(int i, int j) const { return transition[static_cast<size_t>(i) * alphabet + j]; }
};

/// Builds the chain, computing the stationary distribution when not given
/// (power iteration from uniform). Throws on non-stochastic input.
MarkovChain1D make_markov(int alphabet, std::vector<double> transition,
                          std::optional<std::vector<double>> stationary = std::nullopt);

/// Symmetric two-state chain with the given flip probability.
MarkovChain1D binary_flip_chain(double flip);

double entropy_of_distribution(std::span<const double> p);

/// Conditional entropy H(next | prev) in nats.
double markov_conditional_entropy(const MarkovChain1D& c);

/// Closed-form S(n) = H(pi) + (n-1) H(next|prev) for n consecutive sites.
double markov_entropy(const MarkovChain1D& c, int n);

/// Joint table of n consecutive sites of the stationary chain (line topology);
/// the brute-force cross-check for markov_entropy.
ProbTable markov_joint(const MarkovChain1D& c, int n);

/// Dense Hermitian density operator on `sites` subsystems of dimension
/// `local_dim` each; site 0 indexes the least significant digit.
struct DensityMatrix {
    int sites = 0;
    int local_dim = 2;
    std::vector<std::complex<double>> a;  // row-major dim x dim

    int dim() const;
    std::complex<double>& at(int i, int j) { return a[static_cast<size_t>(i) * dim() + j]; }
    const std::complex<double>& at(int i, int j) const { return a[static_cast<size_t>(i) * dim() + j]; }

    void validate() const;  // hermiticity and unit trace within 1e-12
};

/// Traces out every site not in `keep`; keeping all sites is the identity.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations
/// (off-diagonal Frobenius threshold 1e-13, at most 100 sweeps). Ascending.
std::vector<double> hermitian_eigenvalues(int dim, std::vector<std::complex<double>> a);

/// -sum(lambda log lambda) over the spectrum, eigenvalues below 1e-14
/// treated as zero. Throws if the input is not Hermitian within tolerance.
double von_neumann_entropy(const DensityMatrix& rho);

/// Rank-one projector onto (|0...0> + |1...1>)/sqrt(2) on n qubits, 2 <= n <= 12.
DensityMatrix ghz_state(int n);

/// Random density matrix on a qubit ring, symmetrized over the ring's
/// translations (and reflections for `full`), deterministic for a fixed seed.
DensityMatrix random_ring_state(int qubits, uint64_t seed, SymmetryKind group);

/// Maps lattice cells to model sites, wrapping on rings/tori.
struct SiteGeometry {
    Topology topo = Topology::line;
    int sites = 0;
    int m1 = 0, m2 = 0;

    int site_of(const Cell& c) const;  // throws if out of range (line)
};

/// Common interface for evaluating region entropies of a concrete state.
class StateModel {
public:
    virtual ~StateModel() = default;
    virtual double region_entropy(const std::vector<int>& sites) const = 0;
    virtual SiteGeometry geometry() const = 0;
    virtual std::string describe() const = 0;
};

std::unique_ptr<StateModel> classical_model(ProbTable table);
std::unique_ptr<StateModel> markov_model(const MarkovChain1D& chain, int sites);
std::unique_ptr<StateModel> quantum_ring_model(DensityMatrix rho);

/// class index -> model site list for its canonical placement.
using EmbeddingMap = std::vector<std::vector<int>>;

/// Embeds every class of the universe into the geometry: concrete classes via
/// their canonical representative, ring arcs via consecutive sites. Throws if
/// a class cannot be embedded.
EmbeddingMap build_embedding(const RegionUniverse& u, const SiteGeometry& g);

struct EntropyTable {
    std::vector<double> values;  // nats, aligned with universe class indices
};

EntropyTable entropy_table(const StateModel& model, const RegionUniverse& u, const EmbeddingMap& emb);

/// Worst signed margin of the given constraint rows on a table (negative
/// margin = violation), split by axiom kind.
struct AxiomCheckReport {
    double min_margin_pos = 0.0;
    double min_margin_sa = 0.0;
    double min_margin_ssa = 0.0;
    int worst_pos = -1, worst_sa = -1, worst_ssa = -1;

    double worst_violation() const;
    bool ok(double tol) const { return worst_violation() <= tol; }
};

AxiomCheckReport check_axioms(const EntropyTable& table, const RegionUniverse& u,
                              const std::vector<Constraint>& constraints);

/// Largest spread of entropies across the placements of a single class:
/// translation/congruence invariance of the model, checked directly.
double max_congruence_spread(const StateModel& model, const RegionUniverse& u);

double evaluate_target(const Target& t, const EntropyTable& table);

}  // namespace entrolab
