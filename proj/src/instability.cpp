#include "gcr/instability.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gcr/linalg.hpp"

namespace gcr {

WeightSet::WeightSet(std::size_t rank, std::vector<Character> weights) : rank_(rank), weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("weight set must be nonempty (the zero vector has no support)");
    std::set<Character> seen;
    for (const Character& chi : weights_) {
        if (chi.size() != rank_) throw InvalidArgument("weight length does not match torus rank");
        if (!seen.insert(chi).second) throw InvalidArgument("weights must be pairwise distinct");
    }
}

namespace {
// Evaluated before the vector is moved into the delegated constructor.
std::size_t rank_of(const std::vector<Character>& weights) { return weights.empty() ? 0 : weights.front().size(); }
}  // namespace

WeightSet::WeightSet(std::vector<Character> weights) : WeightSet(rank_of(weights), std::vector<Character>(weights)) {}

namespace {

BigInt big(std::int64_t v) { return BigInt(v); }

std::int64_t narrow(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw InternalError("integer overflow converting optimal cocharacter");
    }
    return v.convert_to<std::int64_t>();
}

Rational dot(const std::vector<Rational>& a, const Character& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Projection of the origin onto the affine hull of the chosen weights, or
// nullopt when they are affinely dependent.
std::optional<std::vector<Rational>> project_origin(const WeightSet& w, const std::vector<std::size_t>& idx) {
    const Field q = Field::rationals();
    const std::size_t k = idx.size();
    // Affine independence: differences to the first point are independent.
    if (k > 1) {
        Matrix diffs(q, k - 1, w.rank());
        for (std::size_t a = 1; a < k; ++a) {
            for (std::size_t c = 0; c < w.rank(); ++c) {
                diffs.set(a - 1, c, q.from_int(w[idx[a]][c] - w[idx[0]][c]));
            }
        }
        if (rank(diffs) != k - 1) return std::nullopt;
    }
    // KKT system: G alpha - nu 1 = 0, 1^T alpha = 1.
    Matrix kkt(q, k + 1, k + 1);
    Vector rhs(k + 1, q.zero());
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            std::int64_t g = std::inner_product(w[idx[a]].begin(), w[idx[a]].end(), w[idx[b]].begin(),
                                                std::int64_t{0});
            kkt.set(a, b, q.from_int(g));
        }
        kkt.set(a, k, q.from_int(-1));
        kkt.set(k, a, q.one());
    }
    rhs[k] = q.one();
    auto sol = solve_affine(kkt, rhs);
    GCR_ASSERT(sol && sol->kernel.empty(), "KKT system of affinely independent points is nonsingular");
    std::vector<Rational> alpha;
    for (std::size_t a = 0; a < k; ++a) alpha.push_back(sol->particular[a].rational());
    return alpha;
}

// Visits all k-subsets of {0..t-1} in lexicographic order.
template <class Fn>
bool for_each_subset(std::size_t t, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (fn(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == t - k + (i - 1)) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::int64_t norm_squared(const std::vector<std::int64_t>& lambda) {
    return std::inner_product(lambda.begin(), lambda.end(), lambda.begin(), std::int64_t{0});
}

WeightSet support_of_tuple(const MatrixTuple& h, const Matrix& g) {
    const std::size_t n = h.dimension();
    if (!g.is_square() || g.rows() != n) throw InvalidArgument("basis change has the wrong dimension");
    auto g_inv = inverse(g);
    if (!g_inv) throw InvalidArgument("basis change not invertible");
    std::set<Character> weights;
    for (const Matrix& x : h) {
        Matrix y = *g_inv * x * g;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (h.field().is_zero(y(i, j))) continue;
                Character chi(n, 0);
                chi[i] += 1;
                chi[j] -= 1;
                weights.insert(std::move(chi));
            }
        }
    }
    if (weights.empty()) throw InvalidArgument("tuple has empty support");
    return WeightSet(n, std::vector<Character>(weights.begin(), weights.end()));
}

std::int64_t mu(const WeightSet& w, const std::vector<std::int64_t>& lambda) {
    if (lambda.size() != w.rank()) throw InvalidArgument("mu: length mismatch");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const Character& chi : w.weights()) {
        best = std::min(best, std::inner_product(lambda.begin(), lambda.end(), chi.begin(), std::int64_t{0}));
    }
    return best;
}

std::strong_ordering f_compare(const WeightSet& w, const std::vector<std::int64_t>& lambda1,
                               const std::vector<std::int64_t>& lambda2) {
    const std::int64_t n1 = norm_squared(lambda1);
    const std::int64_t n2 = norm_squared(lambda2);
    if (n1 == 0 || n2 == 0) throw InvalidArgument("f is undefined at the zero cocharacter");
    const std::int64_t m1 = mu(w, lambda1);
    const std::int64_t m2 = mu(w, lambda2);
    const int s1 = (m1 > 0) - (m1 < 0);
    const int s2 = (m2 > 0) - (m2 < 0);
    if (s1 != s2) return s1 <=> s2;
    if (s1 == 0) return std::strong_ordering::equal;
    // |f1| vs |f2| via mu1^2 n2 vs mu2^2 n1.
    const BigInt lhs = big(m1) * big(m1) * big(n2);
    const BigInt rhs = big(m2) * big(m2) * big(n1);
    const auto magnitude = lhs == rhs ? std::strong_ordering::equal
                                      : (lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater);
    if (s1 > 0) return magnitude;
    return 0 <=> magnitude;
}

MinNormPoint min_norm_point(const WeightSet& w) {
    const std::size_t t = w.size();
    const std::size_t r = w.rank();
    std::optional<MinNormPoint> found;
    for (std::size_t k = 1; k <= std::min(t, r + 1) && !found; ++k) {
        for_each_subset(t, k, [&](const std::vector<std::size_t>& idx) {
            auto alpha = project_origin(w, idx);
            if (!alpha) return false;
            if (std::any_of(alpha->begin(), alpha->end(), [](const Rational& a) { return a < 0; })) return false;
            std::vector<Rational> p(r, Rational(0));
            for (std::size_t a = 0; a < idx.size(); ++a) {
                for (std::size_t c = 0; c < r; ++c) p[c] += (*alpha)[a] * w[idx[a]][c];
            }
            const Rational pp = dot(p, p);
            for (const Character& chi : w.weights()) {
                if (dot(p, chi) < pp) return false;
            }
            MinNormPoint result;
            result.point = std::move(p);
            result.coefficients.assign(t, Rational(0));
            for (std::size_t a = 0; a < idx.size(); ++a) result.coefficients[idx[a]] = (*alpha)[a];
            found = std::move(result);
            return true;
        });
    }
    GCR_ASSERT(found.has_value(), "some Caratheodory simplex carries the minimum-norm point");
    return *found;
}

InstabilityReport optimal_cocharacter(const WeightSet& w) {
    MinNormPoint mnp = min_norm_point(w);
    InstabilityReport report;
    report.min_norm_point = mnp.point;
    report.hull_coefficients = mnp.coefficients;
    report.optimal_value_squared = dot(mnp.point, mnp.point);
    for (const Character& chi : w.weights()) {
        report.margins.push_back(dot(mnp.point, chi) - report.optimal_value_squared);
    }
    if (report.optimal_value_squared == 0) {
        report.semistable = true;
        return report;
    }
    // Clear denominators, then divide by the gcd of the numerators.
    BigInt lcm = 1;
    for (const Rational& c : mnp.point) {
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(c));
    }
    std::vector<BigInt> scaled;
    BigInt g = 0;
    for (const Rational& c : mnp.point) {
        BigInt v = boost::multiprecision::numerator(c) * (lcm / boost::multiprecision::denominator(c));
        g = boost::multiprecision::gcd(g, v);
        scaled.push_back(std::move(v));
    }
    std::vector<std::int64_t> lambda;
    for (const BigInt& v : scaled) lambda.push_back(narrow(v / g));
    report.mu_at_optimum = mu(w, lambda);
    report.norm_squared = norm_squared(lambda);
    report.optimal_cocharacter = std::move(lambda);
    return report;
}

bool verify_certificate(const WeightSet& w, const InstabilityReport& report) {
    const std::size_t r = w.rank();
    if (report.min_norm_point.size() != r || report.hull_coefficients.size() != w.size() ||
        report.margins.size() != w.size()) {
        return false;
    }
    Rational total = 0;
    std::vector<Rational> p(r, Rational(0));
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational& a = report.hull_coefficients[i];
        if (a < 0) return false;
        total += a;
        for (std::size_t c = 0; c < r; ++c) p[c] += a * w[i][c];
    }
    if (total != 1 || p != report.min_norm_point) return false;
    const Rational pp = dot(p, p);
    if (pp != report.optimal_value_squared) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Rational margin = dot(p, w[i]) - pp;
        if (margin != report.margins[i] || margin < 0) return false;
    }
    if (report.semistable) return pp == 0 && !report.optimal_cocharacter;
    if (pp == 0 || !report.optimal_cocharacter) return false;
    const auto& lambda = *report.optimal_cocharacter;
    if (lambda.size() != r) return false;
    std::int64_t g = 0;
    for (std::int64_t v : lambda) g = std::gcd(g, v);
    if (g != 1) return false;
    // lambda = s p with s > 0: check lambda_i p_j = lambda_j p_i and <lambda, p> > 0.
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (Rational(lambda[i]) * p[j] != Rational(lambda[j]) * p[i]) return false;
        }
    }
    Rational lp = 0;
    for (std::size_t i = 0; i < r; ++i) lp += Rational(lambda[i]) * p[i];
    if (lp <= 0) return false;
    const std::int64_t m = mu(w, lambda);
    const std::int64_t n = norm_squared(lambda);
    if (m != report.mu_at_optimum || n != report.norm_squared) return false;
    return Rational(m) * Rational(m) == pp * Rational(n);
}

BoxOptimum brute_force_optimum(const WeightSet& w, std::int64_t radius, std::uint64_t budget) {
    if (radius < 1) throw InvalidArgument("box radius must be at least 1");
    const std::size_t r = w.rank();
    BigInt cost = r;
    for (std::size_t i = 0; i < r; ++i) cost *= 2 * radius + 1;
    if (cost > budget) throw BudgetExceeded("box enumeration of " + cost.str() + " exceeds budget " +
                                            std::to_string(budget));
    std::vector<std::int64_t> lambda(r, -radius);
    std::optional<std::vector<std::int64_t>> best;
    while (true) {
        if (std::any_of(lambda.begin(), lambda.end(), [](std::int64_t v) { return v != 0; })) {
            if (!best || f_compare(w, lambda, *best) == std::strong_ordering::greater) best = lambda;
        }
        std::size_t i = r;
        while (i > 0 && lambda[i - 1] == radius) {
            lambda[i - 1] = -radius;
            --i;
        }
        if (i == 0) break;
        ++lambda[i - 1];
    }
    GCR_ASSERT(best.has_value(), "box contains a nonzero point");
    return {*best, mu(w, *best), norm_squared(*best)};
}

std::int64_t mu_conjugated(const MatrixTuple& h, const Cocharacter& lambda) {
    if (lambda.dimension() != h.dimension()) throw InvalidArgument("cocharacter dimension does not match tuple");
    Matrix g = lambda.conjugator ? *lambda.conjugator : Matrix::identity(h.field(), h.dimension());
    return mu(support_of_tuple(h, g), lambda.exponents);
}

}  // namespace gcr
