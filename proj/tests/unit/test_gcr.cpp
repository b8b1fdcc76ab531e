#include "doctest.h"
#include "support.hpp"

using namespace gcr;
using gcr::testing::random_invertible;
using gcr::testing::random_tuple;
using gcr::testing::random_unipotent;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);

Vector vec(const Field& f, std::initializer_list<std::int64_t> xs) {
    Vector v;
    for (auto x : xs) v.push_back(f.from_int(x));
    return v;
}

Subspace span(const Field& f, std::size_t n, std::vector<Vector> vs) { return Subspace::span(f, n, vs); }

MatrixTuple corner(const Field& f) { return MatrixTuple({Matrix::from_ints(f, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})}); }

// Independent oracle: soc(V) as the sum of all cyclic submodules that contain
// no smaller nonzero invariant subspace, found by enumerating every vector.
Subspace socle_oracle(const MatrixTuple& h) {
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    const std::uint64_t total = saturating_power(*f.order(), n);
    std::vector<Subspace> cyclic;
    for (std::uint64_t idx = 1; idx < total; ++idx) cyclic.push_back(spin({vector_at(f, n, idx)}, h));
    Subspace out(f, n);
    for (const Subspace& c : cyclic) {
        bool minimal = true;
        for (const Subspace& d : cyclic) {
            if (d.dim() < c.dim() && c.contains(d)) minimal = false;
        }
        if (minimal) out = out.sum(c);
    }
    return out;
}

// Independent oracle: the module is semisimple iff every invariant subspace
// has an invariant complement. For n <= 3 every invariant subspace is the
// spin of at most two vectors.
bool semisimple_oracle(const MatrixTuple& h) {
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    const std::uint64_t total = saturating_power(*f.order(), n);
    std::vector<Subspace> invariant;
    for (std::uint64_t a = 1; a < total; ++a) {
        for (std::uint64_t b = a; b < total; ++b) {
            Subspace s = spin({vector_at(f, n, a), vector_at(f, n, b)}, h);
            if (std::find(invariant.begin(), invariant.end(), s) == invariant.end()) invariant.push_back(s);
        }
    }
    for (const Subspace& w : invariant) {
        if (w.is_full()) continue;
        bool split = false;
        for (const Subspace& c : invariant) {
            if (c.intersect(w).is_zero() && c.sum(w).is_full()) split = true;
        }
        if (!split) return false;
    }
    return true;
}

bool has_nontrivial_factor_split(const ModuleDecomposition& d) {
    return std::all_of(d.complements.begin(), d.complements.end(), [](const auto& c) { return c.has_value(); });
}

}  // namespace

TEST_SUITE("gcr-engine") {

TEST_CASE("has_invariant_complement examples") {
    MatrixTuple j2({Matrix::from_ints(Q, {{1, 1}, {0, 1}})});
    CHECK_FALSE(has_invariant_complement(j2, span(Q, 2, {vec(Q, {1, 0})})).has_value());
    MatrixTuple d({Matrix::from_ints(Q, {{1, 0}, {0, 2}})});
    auto c = has_invariant_complement(d, span(Q, 2, {vec(Q, {1, 0})}));
    REQUIRE(c);
    CHECK(*c == span(Q, 2, {vec(Q, {0, 1})}));
    CHECK_FALSE(has_invariant_complement(corner(Q), span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})})).has_value());
    CHECK_THROWS_AS(has_invariant_complement(j2, span(Q, 2, {vec(Q, {0, 1})})), InvalidArgument);
}

TEST_CASE("composition_series examples") {
    auto a = composition_series(MatrixTuple({Matrix::from_ints(Q, {{1, 1}, {0, 1}})}));
    REQUIRE(a.series.size() == 3);
    CHECK(a.series[1] == span(Q, 2, {vec(Q, {1, 0})}));
    CHECK_FALSE(a.semisimple);

    auto b = composition_series(MatrixTuple({Matrix::identity(Q, 2)}));
    REQUIRE(b.series.size() == 3);
    CHECK(b.series[1] == span(Q, 2, {vec(Q, {1, 0})}));
    CHECK(b.semisimple);

    auto c = composition_series(adjoint_sl2(F3));
    CHECK(c.series.size() == 2);
    CHECK(c.factor_dimensions == std::vector<std::size_t>{3});
    CHECK(c.factor_commutant_dimensions == std::vector<std::size_t>{1});
    CHECK(c.all_certified());
}

TEST_CASE("complete reducibility examples") {
    // The finite group SL_2(F_2) = S_3 acts on trace-zero matrices as the
    // scalars plus its projective 2-dimensional module, so the line of I
    // splits off: E12 + E21 and I + E21 span an invariant complement.
    auto adj = adjoint_sl2(F2);
    auto r = is_completely_reducible(adj);
    CHECK(r.completely_reducible);
    CHECK_FALSE(r.witness);
    const Subspace scalars = span(F2, 3, {vec(F2, {0, 0, 1})});
    const Subspace complement = span(F2, 3, {vec(F2, {1, 1, 0}), vec(F2, {0, 1, 1})});
    CHECK(scalars.is_stable(adj.components()));
    CHECK(complement.is_stable(adj.components()));
    CHECK(scalars.sum(complement).is_full());
    CHECK(has_invariant_complement(adj, scalars).has_value());

    // A single transvection generates a unipotent group, which is not.
    MatrixTuple transvection({adj[0]});
    auto t = is_completely_reducible(transvection);
    CHECK_FALSE(t.completely_reducible);
    REQUIRE(t.witness);
    CHECK(verify_witness(transvection, *t.witness));

    auto diag = MatrixTuple({Matrix::from_ints(F5, {{1, 0}, {0, 2}}), Matrix::from_ints(F5, {{2, 0}, {0, 1}})});
    CHECK(is_completely_reducible(diag).completely_reducible);

    auto c = is_completely_reducible(corner(Q));
    CHECK_FALSE(c.completely_reducible);
    REQUIRE(c.witness);
    CHECK(c.witness->flag.size() == 2);
    CHECK(c.witness->flag[0] == span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})}));
    CHECK(verify_witness(corner(Q), *c.witness));
}

TEST_CASE("orbit_closed examples") {
    CHECK(orbit_closed(MatrixTuple({Matrix::from_ints(Q, {{2, 0}, {0, 3}}), Matrix::from_ints(Q, {{5, 0}, {0, 1}})})));
    CHECK_FALSE(orbit_closed(MatrixTuple({Matrix::from_ints(F3, {{1, 1}, {0, 1}})})));
    CHECK(orbit_closed(adjoint_sl2(F2)));
    CHECK_FALSE(orbit_closed(MatrixTuple({adjoint_sl2(F2)[0]})));
}

TEST_CASE("semisimplify examples") {
    auto a = semisimplify(MatrixTuple({Matrix::from_ints(Q, {{1, 1}, {0, 1}})}));
    CHECK(a.tuple[0].is_identity());
    CHECK(a.lambda.exponents == std::vector<std::int64_t>{1, 0});

    MatrixTuple block({direct_sum(Matrix::from_ints(Q, {{0, -1}, {1, 0}}), Matrix::from_ints(Q, {{3}}))});
    auto b = semisimplify(block);
    CHECK(b.tuple == block);
    CHECK(fixes(b.lambda, block));

    auto c = semisimplify(corner(Q));
    CHECK(c.tuple[0].is_identity());
    CHECK(c.lambda.exponents == std::vector<std::int64_t>{1, 1, 0});
    CHECK(c.flag.front() == span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})}));
}

TEST_CASE("borel_tits_flag examples") {
    MatrixTuple j3({Matrix::from_ints(Q, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})});
    auto a = borel_tits_flag(j3);
    REQUIRE(a.flag.size() == 3);
    CHECK(a.flag[0] == span(Q, 3, {vec(Q, {1, 0, 0})}));
    CHECK(a.flag[1] == span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})}));
    CHECK(verify_witness(j3, a));

    auto b = borel_tits_flag(corner(Q));
    REQUIRE(b.flag.size() == 2);
    CHECK(b.flag[0] == span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})}));

    CHECK_THROWS_AS(borel_tits_flag(MatrixTuple({Matrix::identity(Q, 2)})), InvalidArgument);
    CHECK_THROWS_AS(borel_tits_flag(MatrixTuple({Matrix::from_ints(Q, {{2, 0}, {0, 1}})})), InvalidArgument);
    // Two unipotent generators of SL_2(F_2) generate a non-unipotent group.
    CHECK_THROWS_AS(borel_tits_flag(sl2_generators(F2)), InvalidArgument);
}

TEST_CASE("orbit_dimension examples") {
    CHECK(orbit_dimension(MatrixTuple({Matrix::identity(Q, 3)})) == 0);
    CHECK(orbit_dimension(MatrixTuple({Matrix::from_ints(Q, {{1, 1}, {0, 1}})})) == 2);
    CHECK(orbit_dimension(MatrixTuple({Matrix::from_ints(Q, {{2, 0}, {0, 3}})})) == 2);
}

TEST_CASE("product_check examples") {
    MatrixTuple d1({Matrix::from_ints(F5, {{2, 0}, {0, 3}})});
    MatrixTuple d2({Matrix::from_ints(F5, {{4}})});
    auto a = product_check(d1, d2);
    CHECK((a.first && a.second && a.combined));
    auto b = product_check(MatrixTuple({Matrix::from_ints(F5, {{1, 1}, {0, 1}})}), d2);
    CHECK((!b.first && b.second && !b.combined));
    auto adj = adjoint_sl2(F2);
    auto c = product_check(adj, adj);
    CHECK((c.first && c.second && c.combined));
    MatrixTuple transvection({adj[0]});
    auto e = product_check(transvection, transvection);
    CHECK((!e.first && !e.second && !e.combined));
    CHECK_THROWS_AS(product_check(adj, d2), InvalidArgument);
}

TEST_CASE("ru_conjugator examples") {
    MatrixTuple block({Matrix::from_ints(F3, {{2, 0}, {0, 1}})});
    auto a = ru_conjugator(block, Cocharacter({1, 0}));
    REQUIRE(a);
    CHECK(a->is_identity());

    CHECK_FALSE(ru_conjugator(MatrixTuple({Matrix::from_ints(F2, {{1, 1}, {0, 1}})}), Cocharacter({1, 0})).has_value());

    Matrix u0 = Matrix::from_ints(F5, {{1, 1}, {0, 1}});
    Matrix d = Matrix::from_ints(F5, {{1, 0}, {0, 2}});
    auto c = ru_conjugator(MatrixTuple({conjugate(u0, d)}), Cocharacter({1, 0}));
    REQUIRE(c);
    CHECK(*c == *inverse(u0));

    CHECK_THROWS_AS(ru_conjugator(MatrixTuple({Matrix::from_ints(Q, {{1, 1}, {0, 1}})}), Cocharacter({1, 0})),
                    InvalidArgument);
    CHECK_THROWS_AS(ru_conjugator(MatrixTuple({Matrix::from_ints(F2, {{1, 0}, {1, 1}})}), Cocharacter({1, 0})),
                    InvalidArgument);
    SearchOptions tight;
    tight.budget = 2;
    CHECK_THROWS_AS(ru_conjugator(MatrixTuple({Matrix::identity(F3, 3)}), Cocharacter({1, 0, -1}), tight),
                    BudgetExceeded);
}

TEST_CASE("tuple_witness_search examples") {
    CHECK_FALSE(tuple_witness_search(MatrixTuple({Matrix::from_ints(F5, {{2, 0}, {0, 3}})})).has_value());

    auto a = tuple_witness_search(corner(Q));
    REQUIRE(a);
    CHECK(a->heuristic);
    CHECK(a->witness.flag.size() == 2);
    CHECK(a->witness.flag[0] == span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})}));
    CHECK(verify_witness(corner(Q), a->witness));

    CHECK_FALSE(tuple_witness_search(adjoint_sl2(F2)).has_value());
    MatrixTuple transvection({adjoint_sl2(F2)[0]});
    auto b = tuple_witness_search(transvection);
    REQUIRE(b);
    CHECK(verify_witness(transvection, b->witness));
    CHECK(mu_conjugated(transvection, b->optimal) >= 0);
}

TEST_CASE("tuple witnesses leave the orbit (F_2, n = 3)") {
    std::mt19937_64 rng(41);
    const auto group = enumerate_general_linear(F2, 3, {});
    int found = 0;
    for (int trial = 0; trial < 60; ++trial) {
        MatrixTuple h = random_tuple(F2, 3, 1 + rng() % 2, rng);
        auto w = tuple_witness_search(h);
        CHECK(w.has_value() != orbit_closed(h));
        if (!w) continue;
        ++found;
        CHECK(verify_witness(h, w->witness));
        CHECK(mu_conjugated(h, w->optimal) >= 0);
        auto lim = limit_tuple(w->optimal, h);
        REQUIRE(lim);
        CHECK(conjugacy_orbit(h, group).count(key_of(*lim)) == 0);
    }
    CHECK(found > 0);
}

TEST_CASE("normal_closure examples") {
    // S_3 as permutation matrices over F_2.
    Matrix transposition = Matrix::from_ints(F2, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    Matrix cycle = Matrix::from_ints(F2, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    MatrixTuple s3(F2, 3, {transposition, cycle, Matrix::identity(F2, 3)});
    CHECK(normal_closure(s3, {0, 1}).size() == 6);
    auto a3 = normal_closure(s3, {1});
    CHECK(a3.size() == 3);
    for (const Matrix& x : a3) CHECK(determinant(x) == F2.one());
    CHECK(normal_closure(s3, {2}).size() == 1);
    CHECK_THROWS_AS(normal_closure(s3, {3}), InvalidArgument);
    CHECK_THROWS_AS(normal_closure(MatrixTuple({Matrix::identity(Q, 2)}), {0}), InvalidArgument);
}

TEST_CASE("socle and semisimplicity agree with enumeration oracles") {
    std::mt19937_64 rng(42);
    for (const Field& f : {F2, F3, F5}) {
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t n = 1 + rng() % 3;
            std::vector<Matrix> gens;
            Matrix g = random_invertible(f, n, rng);
            for (std::size_t k = 0; k < 1 + rng() % 2; ++k) {
                // Mix block-triangular and generic generators so that every
                // module shape appears.
                Matrix m = rng() % 2 ? random_unipotent(f, n, g, rng) : random_invertible(f, n, rng);
                gens.push_back(m);
            }
            MatrixTuple h(f, n, gens);
            CHECK(socle(f, n, h.components()) == socle_oracle(h));
            auto d = composition_series(h);
            CHECK(d.semisimple == semisimple_oracle(h));
            CHECK(has_nontrivial_factor_split(d) == d.semisimple);
        }
    }
}

TEST_CASE("composition factors are irreducible") {
    std::mt19937_64 rng(43);
    for (const Field& f : {F2, F3}) {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 1 + rng() % 4;
            Matrix g = random_invertible(f, n, rng);
            MatrixTuple h(f, n, {random_unipotent(f, n, g, rng), random_invertible(f, n, rng)});
            auto d = composition_series(h);
            CHECK(d.all_certified());
            for (std::size_t i = 0; i + 1 < d.series.size(); ++i) {
                CHECK(d.series[i + 1].is_stable(h.components()));
                Section s(d.series[i + 1], d.series[i]);
                auto action = s.action(h.components());
                for (std::uint64_t idx = 1; idx < saturating_power(*f.order(), s.dim()); ++idx) {
                    CHECK(spin(f, {vector_at(f, s.dim(), idx)}, action).is_full());
                }
            }
        }
    }
}

TEST_CASE("complete reducibility over Q") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix g = random_invertible(Q, 3, rng);
        MatrixTuple diag({conjugate(g, Matrix::from_ints(Q, {{2, 0, 0}, {0, 3, 0}, {0, 0, 2}}))});
        CHECK(orbit_closed(diag));
        MatrixTuple rot({conjugate(g, direct_sum(Matrix::from_ints(Q, {{0, -1}, {1, 0}}), Matrix::from_ints(Q, {{1}})))});
        auto r = is_completely_reducible(rot);
        CHECK(r.completely_reducible);
        CHECK(r.decomposition.factor_dimensions.size() == 2);
        // The rotation block is not absolutely irreducible; factor order depends on g.
        auto dims = r.decomposition.factor_commutant_dimensions;
        std::sort(dims.begin(), dims.end());
        CHECK(dims == std::vector<std::size_t>{1, 2});
        MatrixTuple uni({random_unipotent(Q, 3, g, rng)});
        if (!uni[0].is_identity()) {
            auto u = is_completely_reducible(uni);
            CHECK_FALSE(u.completely_reducible);
            CHECK(verify_witness(uni, *u.witness));
        }
    }
}

TEST_CASE("criterion (*) consistency, idempotence, conservation and dimension inequality") {
    std::mt19937_64 rng(45);
    for (const auto& [f, n] : std::vector<std::pair<Field, std::size_t>>{{F2, 2}, {F3, 2}, {F2, 3}, {F3, 3}}) {
        const auto group = enumerate_general_linear(f, n, {});
        for (int trial = 0; trial < 15; ++trial) {
            Matrix g = random_invertible(f, n, rng);
            std::vector<std::int64_t> descending(n);
            for (std::size_t i = 0; i < n; ++i) descending[i] = static_cast<std::int64_t>(n - i);
            Matrix triangular = conjugate(g, gcr::testing::random_parabolic_element(f, descending, rng));
            MatrixTuple h = rng() % 2 ? random_tuple(f, n, 1 + rng() % 2, rng)
                                      : MatrixTuple(f, n, {random_unipotent(f, n, g, rng), triangular});
            const bool cr = orbit_closed(h);
            auto ss = semisimplify(h);
            CHECK(cr == (conjugacy_orbit(h, group).count(key_of(ss.tuple)) == 1));
            auto again = semisimplify(ss.tuple);
            CHECK(again.tuple == ss.tuple);
            CHECK(orbit_closed(ss.tuple));
            auto dims = [](std::vector<std::size_t> v) {
                std::sort(v.begin(), v.end());
                return v;
            };
            CHECK(dims(composition_series(h).factor_dimensions) == dims(composition_series(ss.tuple).factor_dimensions));
            if (!cr) CHECK(commutant(ss.tuple).size() > commutant(h).size());
        }
    }
}

TEST_CASE("ru_conjugator agrees with exhaustive conjugacy (F_2, n = 2)") {
    const auto group = enumerate_general_linear(F2, 2, {});
    for (const Matrix& x : group) {
        MatrixTuple h({x});
        const auto orbit = conjugacy_orbit(h, group);
        for (std::int64_t a = -2; a <= 2; ++a) {
            for (std::int64_t b = -2; b <= 2; ++b) {
                Cocharacter l({a, b});
                auto lim = limit_tuple(l, h);
                if (!lim) continue;
                CHECK((orbit.count(key_of(*lim)) == 1) == ru_conjugator(h, l).has_value());
            }
        }
    }
}

TEST_CASE("ru_conjugator is deterministic across thread counts") {
    std::mt19937_64 rng(46);
    SearchOptions many;
    many.threads = 4;
    for (int trial = 0; trial < 30; ++trial) {
        Matrix p = gcr::testing::random_parabolic_element(F3, {1, 0, -1}, rng);
        Matrix lev = *limit_conj(Cocharacter({1, 0, -1}), p);
        MatrixTuple h({lev});
        Matrix u = Matrix::identity(F3, 3);
        u.set(0, 1, F3.element(rng() % 3));
        u.set(0, 2, F3.element(rng() % 3));
        u.set(1, 2, F3.element(rng() % 3));
        MatrixTuple moved = h.conjugated(u);
        CHECK(ru_conjugator(moved, Cocharacter({1, 0, -1})) == ru_conjugator(moved, Cocharacter({1, 0, -1}), many));
    }
}

TEST_CASE("Borel-Tits flags of random unipotent tuples") {
    std::mt19937_64 rng(47);
    for (const Field& f : {F2, F3}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 2 + rng() % 2;
            Matrix g = random_invertible(f, n, rng);
            MatrixTuple u(f, n, {random_unipotent(f, n, g, rng), random_unipotent(f, n, g, rng)});
            if (std::all_of(u.begin(), u.end(), [](const Matrix& x) { return x.is_identity(); })) continue;
            auto w = borel_tits_flag(u);
            CHECK(verify_witness(u, w));
            CHECK(w.flag.size() >= 2);
            const auto closure = group_closure_keys(u, {});
            for (const Matrix& c : enumerate_general_linear(f, n, {})) {
                const MatrixTuple moved = u.conjugated(c);
                bool preserves = true;
                for (const Matrix& x : moved) preserves = preserves && closure.count(key_of(x));
                if (!preserves) continue;
                for (const Subspace& s : w.flag) CHECK(s.image(c) == s);
            }
        }
    }
}

TEST_CASE("adjoint helpers") {
    auto basis = trace_zero_basis(F2, 2);
    REQUIRE(basis.size() == 3);
    CHECK(basis[2].is_identity());
    CHECK_THROWS_AS(trace_zero_basis(F2, 1), InvalidArgument);
    CHECK(adjoint_sl2(F3).dimension() == 3);
    CHECK_THROWS_AS(conjugation_representation(sl2_generators(F3), {Matrix::unit(F3, 2, 0, 1)}), InvalidArgument);
}

}  // TEST_SUITE
