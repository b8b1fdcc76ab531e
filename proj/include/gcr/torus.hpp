#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gcr/linalg.hpp"
#include "gcr/matrix.hpp"

namespace gcr {

/// A weight of the diagonal torus D_n, as an integer exponent vector.
using Character = std::vector<std::int64_t>;

/// A cocharacter a -> diag(a^{e_1}, ..., a^{e_n}) of the diagonal torus,
/// optionally transported by an invertible g to a -> g diag(...) g^{-1}.
/// The conjugated form is carried symbolically; nothing ever evaluates
/// lambda(a).
struct Cocharacter {
    std::vector<std::int64_t> exponents;
    std::optional<Matrix> conjugator;

    Cocharacter() = default;
    explicit Cocharacter(std::vector<std::int64_t> e, std::optional<Matrix> g = std::nullopt);

    std::size_t dimension() const { return exponents.size(); }
    bool is_conjugated() const { return conjugator.has_value(); }
    /// n * lambda.
    Cocharacter scaled(std::int64_t factor) const;

    bool operator==(const Cocharacter&) const = default;
};

/// <lambda, chi> = sum_i lambda_i chi_i. Both must live on the diagonal
/// torus, so a conjugated cocharacter is rejected.
std::int64_t pairing(const Cocharacter& lambda, const Character& chi);

/// P_lambda, L_lambda and R_u(P_lambda) for GL_n. Membership is tested on
/// entries: x in P iff x_ij = 0 whenever lambda_i < lambda_j; x in L iff
/// additionally x_ij = 0 whenever lambda_i != lambda_j; x in R_u iff x in P
/// with identity blocks on the diagonal. For a conjugated cocharacter the
/// tests are applied to g^{-1} x g.
class ParabolicData {
public:
    explicit ParabolicData(Cocharacter lambda);

    const Cocharacter& cocharacter() const { return lambda_; }
    /// Indices sorted by weakly decreasing exponent, ties by index.
    const std::vector<std::size_t>& permutation() const { return permutation_; }
    /// Sizes of the runs of equal exponents in sorted order.
    const std::vector<std::size_t>& block_sizes() const { return block_sizes_; }
    /// True iff all exponents agree, i.e. P_lambda is the whole group.
    bool is_whole_group() const { return block_sizes_.size() <= 1; }

    bool in_parabolic(const Matrix& x) const;
    bool in_levi(const Matrix& x) const;
    bool in_unipotent_radical(const Matrix& x) const;

    /// Positions (i, j) with lambda_i > lambda_j: the free entries of
    /// R_u(P_lambda) in the diagonal-torus coordinates.
    std::vector<std::pair<std::size_t, std::size_t>> radical_positions() const;

private:
    Matrix to_torus_coordinates(const Matrix& x) const;

    Cocharacter lambda_;
    std::optional<Matrix> conjugator_inverse_;
    std::vector<std::size_t> permutation_;
    std::vector<std::size_t> block_sizes_;
};

ParabolicData parabolic_of(const Cocharacter& lambda);

/// lim_{a -> 0} lambda(a) x lambda(a)^{-1}. Entry (i, j) scales by
/// a^{lambda_i - lambda_j}: the limit exists iff every entry with
/// lambda_i < lambda_j vanishes, and it zeroes every entry with
/// lambda_i > lambda_j. Decided by exact zero tests.
std::optional<Matrix> limit_conj(const Cocharacter& lambda, const Matrix& x);

/// Componentwise limits; present iff every component limit exists.
std::optional<MatrixTuple> limit_tuple(const Cocharacter& lambda, const MatrixTuple& h);

/// lambda fixes x, i.e. the limit exists and equals x.
bool fixes(const Cocharacter& lambda, const Matrix& x);
bool fixes(const Cocharacter& lambda, const MatrixTuple& h);

/// A cocharacter whose parabolic is the stabiliser of the flag
/// V_1 < V_2 < ... < V_t = k^n. The conjugator's columns are a basis adapted
/// to the flag (each V_i's RREF rows extend the previous basis), and vectors
/// first appearing in V_i get exponent t - i.
Cocharacter cocharacter_from_flag(std::span<const Subspace> flag);

/// Stabiliser test for a flag: x maps every member into itself.
bool stabilizes_flag(const Matrix& x, std::span<const Subspace> flag);

/// The flag V_1 < ... < V_t = k^n of the parabolic of lambda: V_i is
/// spanned by the conjugator columns whose exponent is at least the i-th
/// largest distinct exponent.
std::vector<Subspace> flag_of(const Cocharacter& lambda, const Field& field);

}  // namespace gcr
