#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "gcr/field.hpp"
#include "gcr/matrix.hpp"
#include "gcr/torus.hpp"

namespace gcr {

/// supp_T(v): a nonempty set of pairwise distinct integer weights in Z^r.
/// Only the support matters for the numerical function, so the weight
/// vectors themselves are not stored.
class WeightSet {
public:
    /// Throws InvalidArgument for an empty set (the zero vector), ragged
    /// lengths, or repeated weights.
    WeightSet(std::size_t rank, std::vector<Character> weights);
    explicit WeightSet(std::vector<Character> weights);

    std::size_t rank() const { return rank_; }
    std::size_t size() const { return weights_.size(); }
    const std::vector<Character>& weights() const { return weights_; }
    const Character& operator[](std::size_t i) const { return weights_[i]; }

    bool operator==(const WeightSet&) const = default;

private:
    std::size_t rank_;
    std::vector<Character> weights_;
};

/// Outcome of the Kempf optimisation inside one torus.
struct InstabilityReport {
    bool semistable = false;
    /// Minimum-norm point p of conv(W).
    std::vector<Rational> min_norm_point;
    /// C^2 = <p, p>.
    Rational optimal_value_squared;
    /// Primitive lattice point on the ray through p; absent when semistable.
    std::optional<std::vector<std::int64_t>> optimal_cocharacter;
    std::int64_t mu_at_optimum = 0;
    std::int64_t norm_squared = 0;
    /// p = sum_i hull_coefficients[i] * W[i], coefficients >= 0 summing to 1.
    std::vector<Rational> hull_coefficients;
    /// <p, W[i]> - <p, p>, all >= 0.
    std::vector<Rational> margins;
};

/// Weights of the conjugation module of the tuple after rewriting it in the
/// basis given by the columns of g: e_i - e_j is present iff some
/// g^{-1} h_k g has a nonzero (i, j) entry. Sorted lexicographically.
WeightSet support_of_tuple(const MatrixTuple& h, const Matrix& g);

/// mu(lambda) = min_i <lambda, chi_i>.
std::int64_t mu(const WeightSet& w, const std::vector<std::int64_t>& lambda);

/// Compares f(lambda) = mu(lambda) / ||lambda|| for two nonzero integer
/// vectors exactly, using signs and cross-multiplied squares.
std::strong_ordering f_compare(const WeightSet& w, const std::vector<std::int64_t>& lambda1,
                               const std::vector<std::int64_t>& lambda2);

struct MinNormPoint {
    std::vector<Rational> point;
    /// Convex coefficients, one per weight (zero for weights not used).
    std::vector<Rational> coefficients;
};

/// The point of conv(W) closest to the origin, with exact hull coefficients.
/// Affinely independent subsets of size 1..r+1 are visited by size and then
/// lexicographically; for each one the origin is projected onto its affine
/// hull by solving the KKT system exactly. The first projection that lies in
/// its simplex and satisfies <p, chi> >= <p, p> for every weight is the
/// unique minimiser.
MinNormPoint min_norm_point(const WeightSet& w);

/// The optimal destabilising cocharacter of W inside the torus, or a
/// semistability verdict when 0 lies in the hull.
InstabilityReport optimal_cocharacter(const WeightSet& w);

/// Re-checks a report against W with exact arithmetic: hull coefficients,
/// margins, primitivity, ray membership and mu^2 = C^2 ||lambda||^2.
bool verify_certificate(const WeightSet& w, const InstabilityReport& report);

struct BoxOptimum {
    std::vector<std::int64_t> lambda;
    std::int64_t mu = 0;
    std::int64_t norm_squared = 0;
};

/// Maximiser of f over the nonzero integer points of [-radius, radius]^r,
/// ties broken towards the lexicographically smallest vector. Throws
/// BudgetExceeded when r * (2 radius + 1)^r exceeds the budget.
BoxOptimum brute_force_optimum(const WeightSet& w, std::int64_t radius, std::uint64_t budget);

/// mu of the tuple for a cocharacter of the torus g D_n g^{-1}: the support
/// is taken in the basis given by the conjugator.
std::int64_t mu_conjugated(const MatrixTuple& h, const Cocharacter& lambda);

std::int64_t norm_squared(const std::vector<std::int64_t>& lambda);

}  // namespace gcr
