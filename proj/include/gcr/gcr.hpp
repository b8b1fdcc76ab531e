#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gcr/finite_groups.hpp"
#include "gcr/instability.hpp"
#include "gcr/linalg.hpp"
#include "gcr/matrix.hpp"
#include "gcr/torus.hpp"

namespace gcr {

/// A chain 0 = V_0 < V_1 < ... < V_s = V of generator-stable subspaces with
/// irreducible quotients. The chain refines the socle series, so it passes
/// through soc(V).
struct ModuleDecomposition {
    std::vector<Subspace> series;
    /// Socle series 0 = S_0 < S_1 = soc(V) < ... < S_t = V.
    std::vector<Subspace> socle_series;
    /// For each proper nonzero member V_1..V_{s-1}: an invariant complement
    /// in V, when one exists.
    std::vector<std::optional<Subspace>> complements;
    /// True iff every proper nonzero member has an invariant complement.
    bool semisimple = true;
    /// dim V_i / V_{i-1} for i = 1..s.
    std::vector<std::size_t> factor_dimensions;
    /// Commutant dimension of each factor; 1 means absolutely irreducible.
    std::vector<std::size_t> factor_commutant_dimensions;
    /// Whether irreducibility of each factor was proved (dimension one,
    /// exhaustive spin, or full enveloping algebra) rather than inferred from
    /// seed spins.
    std::vector<bool> factor_certified;

    bool all_certified() const;
};

/// A flag of generator-stable subspaces certifying that the group is not
/// completely reducible.
struct WitnessParabolic {
    enum class Reason { no_complement, borel_tits };

    /// Nonzero members, strictly increasing, ending at the whole space.
    std::vector<Subspace> flag;
    /// cocharacter_from_flag(flag).
    Cocharacter cocharacter;
    Reason reason = Reason::no_complement;
    /// For no_complement: index into flag of a member without an invariant
    /// complement.
    std::size_t step = 0;
};

/// Re-checks a witness from scratch: flag shape, stability, the adapted
/// cocharacter, and the failing step (no complement, or trivial action on
/// every quotient for a Borel-Tits flag).
bool verify_witness(const MatrixTuple& h, const WitnessParabolic& witness);

struct CrResult {
    bool completely_reducible = false;
    ModuleDecomposition decomposition;
    std::optional<WitnessParabolic> witness;
};

/// An invariant complement of W, found as ker(pi) for an equivariant
/// projection pi onto W. Throws InvalidArgument when W is not stable.
std::optional<Subspace> has_invariant_complement(const MatrixTuple& h, const Subspace& w);

/// Basis of the enveloping algebra k[H] inside M_n, spun from I under right
/// multiplication by the generators.
std::vector<Matrix> enveloping_algebra(const Field& field, std::size_t n, std::span<const Matrix> gens);

/// soc(V) for the module k^n with the given action. Exact: over Q and F_p
/// with p > n it is the common kernel of the trace-form radical of k[H];
/// otherwise the irreducible submodules are found among the cyclic ones by
/// enumerating projective points, which is charged against the budget.
Subspace socle(const Field& field, std::size_t n, std::span<const Matrix> gens, const SearchOptions& options = {});

/// 0 = S_0 < S_1 < ... < S_t = k^n with S_{i+1}/S_i = soc(k^n / S_i).
std::vector<Subspace> socle_series(const MatrixTuple& h, const SearchOptions& options = {});

struct MinimalSubspace {
    Subspace subspace;
    bool certified = false;
};

/// A nonzero invariant subspace of k^d with no smaller invariant subspace
/// found. Spins the standard basis vectors, keeps the first of least
/// dimension, then tries to shrink it by spinning each nonzero vector when
/// q^dim <= 2^16 (certified), otherwise by spinning basis sums and
/// differences and by kernels of c - tI for commutant elements c and guessed
/// eigenvalues t. A full enveloping algebra also certifies the result.
MinimalSubspace minimal_invariant_subspace(const Field& field, std::size_t d, std::span<const Matrix> gens);

ModuleDecomposition composition_series(const MatrixTuple& h, const SearchOptions& options = {});

/// Decides complete reducibility of the natural module: true iff soc(V) = V.
/// Otherwise the witness is the flag soc(V) < V, whose first member has no
/// invariant complement.
CrResult is_completely_reducible(const MatrixTuple& h, const SearchOptions& options = {});

/// Closedness of the conjugacy class of the tuple; equals complete
/// reducibility for GL_n.
bool orbit_closed(const MatrixTuple& h, const SearchOptions& options = {});

struct Semisimplification {
    MatrixTuple tuple;
    Cocharacter lambda;
    /// The nonzero socle-series members the cocharacter is adapted to.
    std::vector<Subspace> flag;
};

/// The limit of the tuple under a cocharacter adapted to the socle series:
/// the block-diagonal associated graded tuple.
Semisimplification semisimplify(const MatrixTuple& h, const SearchOptions& options = {});

/// Iterated fixed-point flag of a unipotent tuple. Throws InvalidArgument for
/// a non-unipotent generator, a trivial group, or generators that together
/// generate a non-unipotent group.
WitnessParabolic borel_tits_flag(const MatrixTuple& u);

/// n^2 - dim commutant.
std::size_t orbit_dimension(const MatrixTuple& h);

struct ProductVerdict {
    bool first = false;
    bool second = false;
    bool combined = false;
};

/// Complete reducibility of each factor and of the block-diagonal tuple.
ProductVerdict product_check(const MatrixTuple& h1, const MatrixTuple& h2, const SearchOptions& options = {});

/// Block-diagonal tuple (diag(a_i, b_i))_i.
MatrixTuple block_diagonal(const MatrixTuple& a, const MatrixTuple& b);

/// The first u in R_u(P_lambda)(F_q), enumerated lexicographically over the
/// free radical entries, with u h_i u^{-1} = lim lambda(a) h_i lambda(a)^{-1}.
/// Throws InvalidArgument over Q or when the limit is absent, BudgetExceeded
/// when q^{#free entries} exceeds the budget.
std::optional<Matrix> ru_conjugator(const MatrixTuple& h, const Cocharacter& lambda, const SearchOptions& options = {});

struct TupleWitness {
    WitnessParabolic witness;
    /// Optimisation over the block torus of the composition-series basis.
    InstabilityReport report;
    /// The block-level optimum expanded to a cocharacter of GL_n.
    Cocharacter optimal;
    /// Always true: optimality over all maximal tori is not claimed.
    bool heuristic = true;
};

/// Heuristic destabilising cocharacter. Absent iff completely reducible.
std::optional<TupleWitness> tuple_witness_search(const MatrixTuple& h, const SearchOptions& options = {});

/// Elements of the smallest normal subgroup of the generated group that
/// contains the selected generators, sorted. Finite fields only.
MatrixTuple normal_closure(const MatrixTuple& h, const std::vector<std::size_t>& subset,
                           const SearchOptions& options = {});

/// Matrices of X -> h X h^{-1} on the span of the given basis of an
/// invariant subspace of M_n, one per generator.
MatrixTuple conjugation_representation(const MatrixTuple& h, const std::vector<Matrix>& basis);

/// E_ij (i != j, row-major), then E_ii - E_nn (i < n).
std::vector<Matrix> trace_zero_basis(const Field& field, std::size_t n);

/// Generators [[1,1],[0,1]] and [[1,0],[1,1]] of SL_2(F_p).
MatrixTuple sl2_generators(const Field& field);

/// SL_2(F_p) acting by conjugation on the trace-zero matrices.
MatrixTuple adjoint_sl2(const Field& field);

}  // namespace gcr
