#include "doctest.h"
#include "support.hpp"

using namespace gcr;

namespace {

WeightSet ws(std::vector<Character> w) { return WeightSet(std::move(w)); }

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);

std::vector<Rational> rat(std::initializer_list<std::int64_t> xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

WeightSet random_weights(std::size_t r, std::mt19937_64& rng) {
    std::set<Character> ws;
    const std::size_t t = 1 + rng() % 6;
    while (ws.size() < t) {
        Character chi(r);
        for (auto& x : chi) x = static_cast<std::int64_t>(rng() % 9) - 4;
        ws.insert(chi);
    }
    return WeightSet(r, std::vector<Character>(ws.begin(), ws.end()));
}

// Squared distance from 0 to conv(W), by exhaustive search over a fine grid of
// convex combinations of at most two weights: an upper bound on C^2.
Rational pairwise_hull_bound(const WeightSet& w) {
    Rational best = -1;
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = a; b < w.size(); ++b) {
            for (int k = 0; k <= 20; ++k) {
                Rational s(k, 20);
                Rational norm = 0;
                for (std::size_t c = 0; c < w.rank(); ++c) {
                    Rational x = s * w[a][c] + (1 - s) * w[b][c];
                    norm += x * x;
                }
                if (best < 0 || norm < best) best = norm;
            }
        }
    }
    return best;
}

}  // namespace

TEST_SUITE("instability-optimizer") {

TEST_CASE("weight sets") {
    CHECK_THROWS_AS(WeightSet(2, {}), InvalidArgument);
    CHECK_THROWS_AS(WeightSet(2, {{1, 0}, {1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(WeightSet(2, {{1, 0}, {1}}), InvalidArgument);
}

TEST_CASE("support_of_tuple examples") {
    const Matrix id = Matrix::identity(Q, 2);
    CHECK(support_of_tuple(MatrixTuple({Matrix::from_ints(Q, {{1, 1}, {0, 1}})}), id).weights() ==
          std::vector<Character>{{0, 0}, {1, -1}});
    CHECK(support_of_tuple(MatrixTuple({id}), Matrix::from_ints(Q, {{2, 1}, {1, 1}})).weights() ==
          std::vector<Character>{{0, 0}});
    CHECK(support_of_tuple(MatrixTuple({Matrix::from_ints(Q, {{0, 1}, {1, 0}})}), id).weights() ==
          std::vector<Character>{{-1, 1}, {1, -1}});
    CHECK_THROWS_AS(support_of_tuple(MatrixTuple({id}), Matrix::identity(Q, 3)), InvalidArgument);
}

TEST_CASE("mu examples") {
    CHECK(mu(ws({{0, 0}, {1, -1}}), {1, -1}) == 0);
    CHECK(mu(ws({{2}}), {1}) == 2);
    CHECK(mu(ws({{1, 0}, {0, 1}}), {1, 1}) == 1);
}

TEST_CASE("mu decides limits of tuples") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 2;
        MatrixTuple h = gcr::testing::random_tuple(Field::prime(3), n, 1 + rng() % 2, rng);
        std::vector<std::int64_t> e(n);
        for (auto& x : e) x = static_cast<std::int64_t>(rng() % 5) - 2;
        const std::int64_t m = mu(support_of_tuple(h, Matrix::identity(h.field(), n)), e);
        auto lim = limit_tuple(Cocharacter(e), h);
        CHECK((m >= 0) == lim.has_value());
        // mu > 0 would force the limit 0; conjugation preserves determinants.
        CHECK(m <= 0);
    }
}

TEST_CASE("f_compare examples") {
    CHECK(f_compare(ws({{2}}), {1}, {2}) == std::strong_ordering::equal);
    CHECK(f_compare(ws({{1}, {2}}), {1}, {-1}) == std::strong_ordering::greater);
    CHECK(f_compare(ws({{1, 1}}), {1, 1}, {1, 0}) == std::strong_ordering::greater);
    CHECK(f_compare(ws({{1, 1}}), {1, 0}, {1, 1}) == std::strong_ordering::less);
    CHECK_THROWS_AS(f_compare(ws({{1}}), {0}, {1}), InvalidArgument);
}

TEST_CASE("f_compare is scale invariant and agrees with a rational surrogate") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 3;
        WeightSet w = random_weights(r, rng);
        std::vector<std::int64_t> a(r), b(r);
        do {
            for (auto& x : a) x = static_cast<std::int64_t>(rng() % 7) - 3;
        } while (norm_squared(a) == 0);
        do {
            for (auto& x : b) x = static_cast<std::int64_t>(rng() % 7) - 3;
        } while (norm_squared(b) == 0);
        for (std::int64_t c = 1; c <= 10; ++c) {
            std::vector<std::int64_t> ca = a;
            for (auto& x : ca) x *= c;
            CHECK(f_compare(w, a, ca) == std::strong_ordering::equal);
        }
        // sign(f) * f^2 is monotone in f.
        auto key = [&](const std::vector<std::int64_t>& l) -> Rational {
            const Rational m = mu(w, l);
            return (m < 0 ? -1 : 1) * m * m / norm_squared(l);
        };
        const Rational ka = key(a), kb = key(b);
        const auto expected = ka == kb ? std::strong_ordering::equal
                                       : (ka < kb ? std::strong_ordering::less : std::strong_ordering::greater);
        CHECK(f_compare(w, a, b) == expected);
    }
}

TEST_CASE("min_norm_point examples") {
    CHECK(min_norm_point(ws({{1}, {2}})).point == rat({1}));
    CHECK(min_norm_point(ws({{-1}, {1}})).point == rat({0}));
    auto p = min_norm_point(ws({{2, 0}, {0, 2}}));
    CHECK(p.point == rat({1, 1}));
    CHECK(p.coefficients == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("optimal_cocharacter examples") {
    auto a = optimal_cocharacter(ws({{1}, {2}}));
    CHECK_FALSE(a.semistable);
    CHECK(*a.optimal_cocharacter == std::vector<std::int64_t>{1});
    CHECK(a.optimal_value_squared == 1);
    CHECK(a.mu_at_optimum == 1);

    auto b = optimal_cocharacter(ws({{2, 0}, {0, 2}}));
    CHECK(*b.optimal_cocharacter == std::vector<std::int64_t>{1, 1});
    CHECK(b.optimal_value_squared == 2);
    CHECK(b.mu_at_optimum == 2);
    CHECK(b.norm_squared == 2);

    auto c = optimal_cocharacter(ws({{-1}, {1}}));
    CHECK(c.semistable);
    CHECK_FALSE(c.optimal_cocharacter.has_value());
    CHECK(verify_certificate(ws({{-1}, {1}}), c));

    // A point in the interior of an edge with a rational, non-integral p.
    auto d = optimal_cocharacter(ws({{3, 1}, {1, 2}}));
    CHECK(verify_certificate(ws({{3, 1}, {1, 2}}), d));
}

TEST_CASE("brute_force_optimum examples") {
    auto a = brute_force_optimum(ws({{3}, {5}}), 6, 1000);
    CHECK(a.lambda == std::vector<std::int64_t>{1});
    CHECK(a.mu == 3);
    auto b = brute_force_optimum(ws({{-1}, {1}}), 6, 1000);
    CHECK(b.mu <= 0);
    auto c = brute_force_optimum(ws({{2, 0}, {0, 2}}), 6, 1000);
    CHECK(c.lambda == std::vector<std::int64_t>{1, 1});
    CHECK_THROWS_AS(brute_force_optimum(ws({{2, 0}, {0, 2}}), 6, 10), BudgetExceeded);
}

TEST_CASE("certificate soundness against the box oracle") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 3;
        WeightSet w = random_weights(r, rng);
        auto report = optimal_cocharacter(w);
        CHECK(verify_certificate(w, report));
        CHECK(report.optimal_value_squared <= pairwise_hull_bound(w));
        auto box = brute_force_optimum(w, 4, 1u << 20);
        if (report.semistable) {
            CHECK(box.mu <= 0);
            continue;
        }
        const auto& l = *report.optimal_cocharacter;
        CHECK(f_compare(w, l, box.lambda) != std::strong_ordering::less);
        std::int64_t g = 0;
        for (auto x : l) g = std::gcd(g, x);
        CHECK(g == 1);
    }
}

TEST_CASE("mu_conjugated examples") {
    const Matrix flip = Matrix::from_ints(Q, {{0, 1}, {1, 0}});
    CHECK(mu_conjugated(MatrixTuple({Matrix::from_ints(Q, {{1, 1}, {0, 1}})}), Cocharacter({1, -1})) == 0);
    CHECK(mu_conjugated(MatrixTuple({Matrix::from_ints(Q, {{1, 0}, {1, 1}})}), Cocharacter({1, -1}, flip)) == 0);
    CHECK(mu_conjugated(MatrixTuple({Matrix::identity(Q, 2)}), Cocharacter({4, -9}, flip)) == 0);
}

TEST_CASE("mu is R_u(P_lambda)-invariant (exhaustive over F_2, n <= 3)") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto group = enumerate_general_linear(F2, n, {});
        std::vector<std::int64_t> e(n, -1);
        while (true) {
            Cocharacter l(e);
            const auto positions = ParabolicData(l).radical_positions();
            for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << positions.size()); ++idx) {
                Matrix u = Matrix::identity(F2, n);
                Vector digits = vector_at(F2, positions.size(), idx);
                for (std::size_t k = 0; k < positions.size(); ++k) u.set(positions[k].first, positions[k].second, digits[k]);
                Cocharacter moved(e, u);
                for (const Matrix& x : group) {
                    MatrixTuple h({x});
                    CHECK(mu_conjugated(h, moved) == mu(support_of_tuple(h, Matrix::identity(F2, n)), e));
                }
            }
            std::size_t i = n;
            while (i > 0 && e[i - 1] == 1) e[--i] = -1;
            if (i == 0) break;
            ++e[i - 1];
        }
    }
}

TEST_CASE("weights increase under R_u(P_lambda)") {
    std::mt19937_64 rng(34);
    const Field F3 = Field::prime(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 3;
        std::vector<std::int64_t> e(n);
        for (auto& x : e) x = static_cast<std::int64_t>(rng() % 5) - 2;
        Cocharacter l(e);
        const auto positions = ParabolicData(l).radical_positions();
        Matrix u = Matrix::identity(F3, n);
        for (auto [i, j] : positions) u.set(i, j, F3.element(rng() % 3));
        const std::size_t i = rng() % n, j = rng() % n;
        Matrix x = Matrix::unit(F3, n, i, j);
        Character chi(n, 0);
        chi[i] += 1;
        chi[j] -= 1;
        Matrix diff = conjugate(u, x) - x;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (F3.is_zero(diff(a, b))) continue;
                Character psi(n, 0);
                psi[a] += 1;
                psi[b] -= 1;
                CHECK(pairing(l, psi) > pairing(l, chi));
            }
        }
    }
}

}  // TEST_SUITE
