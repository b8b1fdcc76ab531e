#include "gcr/gcr.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gcr {

namespace {

Matrix stack_rows(const Field& field, std::size_t cols, const std::vector<Vector>& rows) {
    if (rows.empty()) return Matrix(field, 0, cols);
    return Matrix::from_rows(field, rows);
}

std::vector<Vector> rows_of(const Matrix& m) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
    return out;
}

std::span<const Matrix> gens_of(const MatrixTuple& h) { return {h.components().data(), h.size()}; }

MatrixKey subspace_key(const Subspace& s) {
    MatrixKey key{static_cast<std::uint32_t>(s.dim())};
    for (const Vector& v : s.basis()) {
        for (const Scalar& x : v) key.push_back(x.residue());
    }
    return key;
}

// Common kernel of the matrices in the list, as a subspace of k^n.
Subspace common_kernel(const Field& field, std::size_t n, const std::vector<Matrix>& mats) {
    std::vector<Vector> rows;
    for (const Matrix& m : mats) {
        for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    }
    if (rows.empty()) return Subspace::full(field, n);
    return Subspace::span(field, n, kernel_basis(Matrix::from_rows(field, rows)));
}

Subspace socle_by_trace_form(const Field& field, std::size_t n, std::span<const Matrix> gens) {
    const std::vector<Matrix> algebra = enveloping_algebra(field, n, gens);
    const std::size_t d = algebra.size();
    Matrix gram(field, d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            Scalar t = trace(algebra[i] * algebra[j]);
            gram.set(i, j, t);
            gram.set(j, i, t);
        }
    }
    std::vector<Matrix> radical;
    for (const Vector& c : kernel_basis(gram)) {
        Matrix x(field, n, n);
        for (std::size_t i = 0; i < d; ++i) {
            if (!field.is_zero(c[i])) x = x + algebra[i].scaled(c[i]);
        }
        radical.push_back(std::move(x));
    }
    return common_kernel(field, n, radical);
}

// Every nonzero vector with leading coordinate 1, in lexicographic order.
template <class Fn>
void for_each_projective_point(const Field& field, std::size_t n, Fn&& fn) {
    const std::uint64_t q = *field.order();
    for (std::size_t lead = 0; lead < n; ++lead) {
        const std::size_t tail = n - 1 - lead;
        const std::uint64_t count = saturating_power(q, tail);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Vector v(n, field.zero());
            v[lead] = field.one();
            Vector rest = vector_at(field, tail, idx);
            std::copy(rest.begin(), rest.end(), v.begin() + static_cast<std::ptrdiff_t>(lead + 1));
            fn(v);
        }
    }
}

std::uint64_t projective_count(std::uint64_t q, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t term = saturating_power(q, k);
        if (term == std::numeric_limits<std::uint64_t>::max() || total > std::numeric_limits<std::uint64_t>::max() - term) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total += term;
    }
    return total;
}

Subspace socle_by_enumeration(const Field& field, std::size_t n, std::span<const Matrix> gens,
                              const SearchOptions& options) {
    const std::uint64_t count = projective_count(*field.order(), n);
    if (count > options.budget) {
        throw BudgetExceeded("socle enumeration over F_" + std::to_string(*field.order()) + "^" + std::to_string(n) +
                             " needs " + std::to_string(count) + " cyclic submodules, budget " +
                             std::to_string(options.budget));
    }
    std::map<MatrixKey, Subspace> cyclic;
    for_each_projective_point(field, n, [&](const Vector& v) {
        Subspace s = spin(field, {v}, gens);
        cyclic.try_emplace(subspace_key(s), std::move(s));
    });
    std::vector<Subspace> by_dim;
    for (auto& [key, s] : cyclic) by_dim.push_back(s);
    std::stable_sort(by_dim.begin(), by_dim.end(),
                     [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
    // A cyclic submodule is irreducible iff it contains no irreducible one of
    // smaller dimension.
    std::vector<Subspace> irreducible;
    Subspace total(field, n);
    for (const Subspace& c : by_dim) {
        bool minimal = std::none_of(irreducible.begin(), irreducible.end(),
                                    [&](const Subspace& s) { return s.dim() < c.dim() && c.contains(s); });
        if (minimal) {
            irreducible.push_back(c);
            total = total.sum(c);
        }
    }
    return total;
}

// det(tI - A) over Q by Faddeev-LeVerrier, coefficients c_0..c_n.
std::vector<Rational> characteristic_polynomial(const Matrix& a) {
    const Field& f = a.field();
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    Matrix m(f, n, n);
    const Matrix id = Matrix::identity(f, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + id.scaled(f.from_rational(c[n - k + 1]));
        c[n - k] = -trace(a * m).rational() / Rational(static_cast<std::int64_t>(k));
    }
    return c;
}

std::vector<BigInt> divisors(BigInt v) {
    if (v < 0) v = -v;
    std::vector<BigInt> out;
    const BigInt cap = 1000000000;
    if (v == 0 || v > cap) return out;
    for (BigInt d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            if (d * d != v) out.push_back(v / d);
        }
    }
    return out;
}

// Rational roots of an integer-coefficient polynomial with small extreme
// coefficients; other roots are not searched for.
std::vector<Rational> rational_roots(std::vector<Rational> c) {
    std::vector<Rational> roots;
    while (!c.empty() && c.front() == 0) {
        roots.push_back(0);
        c.erase(c.begin());
    }
    if (c.size() < 2) return roots;
    BigInt lcm = 1;
    for (const Rational& x : c) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    std::vector<BigInt> ints;
    for (const Rational& x : c) ints.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    for (const BigInt& p : divisors(ints.front())) {
        for (const BigInt& q : divisors(ints.back())) {
            for (int sign : {1, -1}) {
                Rational r(sign * p, q);
                Rational value = 0;
                for (std::size_t k = ints.size(); k-- > 0;) value = value * r + Rational(ints[k]);
                if (value == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
        }
    }
    return roots;
}

// Invariant subspaces ker(c - t I) for commutant elements c and candidate
// eigenvalues t: diagonal entries, rational roots over Q, and every element
// of a small prime field.
std::vector<Subspace> commutant_kernels(const Field& field, std::size_t d, std::span<const Matrix> gens) {
    std::vector<Subspace> out;
    const Matrix id = Matrix::identity(field, d);
    for (const Matrix& c : commutant(gens, field, d)) {
        std::vector<Scalar> guesses;
        auto add_guess = [&](const Scalar& s) {
            if (std::find(guesses.begin(), guesses.end(), s) == guesses.end()) guesses.push_back(s);
        };
        for (std::size_t i = 0; i < d; ++i) add_guess(c(i, i));
        if (!field.is_finite()) {
            for (const Rational& r : rational_roots(characteristic_polynomial(c))) add_guess(field.from_rational(r));
        } else if (*field.order() <= 1024) {
            for (std::uint64_t k = 0; k < *field.order(); ++k) add_guess(field.element(k));
        }
        for (const Scalar& t : guesses) {
            Subspace k = Subspace::span(field, d, kernel_basis(c - id.scaled(t)));
            if (!k.is_zero() && !k.is_full()) out.push_back(std::move(k));
        }
    }
    return out;
}

bool acts_with_full_algebra(const Field& field, std::size_t d, std::span<const Matrix> gens) {
    return enveloping_algebra(field, d, gens).size() == d * d;
}

std::vector<Subspace> nonzero_members(const std::vector<Subspace>& series) {
    return std::vector<Subspace>(series.begin() + 1, series.end());
}

Matrix radical_element(const Field& field, std::size_t n,
                       const std::vector<std::pair<std::size_t, std::size_t>>& positions, const Vector& digits) {
    Matrix u = Matrix::identity(field, n);
    for (std::size_t k = 0; k < positions.size(); ++k) u.set(positions[k].first, positions[k].second, digits[k]);
    return u;
}

}  // namespace

bool ModuleDecomposition::all_certified() const {
    return std::all_of(factor_certified.begin(), factor_certified.end(), [](bool b) { return b; });
}

std::optional<Subspace> has_invariant_complement(const MatrixTuple& h, const Subspace& w) {
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    if (w.ambient() != n) throw InvalidArgument("subspace dimension does not match tuple");
    if (!w.is_stable(gens_of(h))) throw InvalidArgument("subspace not invariant under the generators");
    if (w.is_zero()) return Subspace::full(f, n);
    if (w.is_full()) return Subspace(f, n);

    // Unknown pi with pi_{ik} at index i*n + k.
    const std::size_t unknowns = n * n;
    std::vector<Vector> rows;
    Vector rhs;
    auto new_row = [&] { return Vector(unknowns, f.zero()); };
    for (const Matrix& x : h) {
        // (pi x - x pi)_{ij} = 0
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Vector row = new_row();
                for (std::size_t l = 0; l < n; ++l) {
                    row[i * n + l] = f.add(row[i * n + l], x(l, j));
                    row[l * n + j] = f.sub(row[l * n + j], x(i, l));
                }
                rows.push_back(std::move(row));
                rhs.push_back(f.zero());
            }
        }
    }
    // pi w = w on a basis of W.
    for (const Vector& b : w.basis()) {
        for (std::size_t i = 0; i < n; ++i) {
            Vector row = new_row();
            for (std::size_t l = 0; l < n; ++l) row[i * n + l] = b[l];
            rows.push_back(std::move(row));
            rhs.push_back(b[i]);
        }
    }
    // Image inside W: every annihilator row kills every column of pi.
    const Matrix ann = annihilator(w);
    for (std::size_t r = 0; r < ann.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            Vector row = new_row();
            for (std::size_t i = 0; i < n; ++i) row[i * n + j] = ann(r, i);
            rows.push_back(std::move(row));
            rhs.push_back(f.zero());
        }
    }
    auto sol = solve_affine(Matrix::from_rows(f, rows), rhs);
    if (!sol) return std::nullopt;
    const Matrix pi = unflatten(f, n, n, sol->particular);
    Subspace complement = Subspace::span(f, n, kernel_basis(pi));
    GCR_ASSERT(complement.is_stable(gens_of(h)), "complement is invariant");
    GCR_ASSERT(complement.intersect(w).is_zero() && complement.sum(w).is_full(), "complement is a complement");
    return complement;
}

std::vector<Matrix> enveloping_algebra(const Field& field, std::size_t n, std::span<const Matrix> gens) {
    EchelonBuilder echelon(field, n * n);
    std::vector<Matrix> basis{Matrix::identity(field, n)};
    echelon.add(flatten(basis.front()));
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        for (const Matrix& g : gens) {
            Matrix next = basis[idx] * g;
            if (echelon.add(flatten(next))) basis.push_back(std::move(next));
        }
    }
    return basis;
}

Subspace socle(const Field& field, std::size_t n, std::span<const Matrix> gens, const SearchOptions& options) {
    if (n == 0) return Subspace(field, 0);
    if (!field.is_finite() || field.characteristic() > n) return socle_by_trace_form(field, n, gens);
    return socle_by_enumeration(field, n, gens, options);
}

std::vector<Subspace> socle_series(const MatrixTuple& h, const SearchOptions& options) {
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    const Subspace whole = Subspace::full(f, n);
    std::vector<Subspace> series{Subspace(f, n)};
    while (!series.back().is_full()) {
        Section section(whole, series.back());
        const std::vector<Matrix> action = section.action(gens_of(h));
        Subspace next = section.lift(socle(f, section.dim(), action, options));
        GCR_ASSERT(next.dim() > series.back().dim(), "socle of a nonzero module is nonzero");
        series.push_back(std::move(next));
    }
    return series;
}

MinimalSubspace minimal_invariant_subspace(const Field& field, std::size_t d, std::span<const Matrix> gens) {
    if (d == 0) throw InvalidArgument("minimal invariant subspace of the zero module");
    std::optional<Subspace> best;
    for (std::size_t i = 0; i < d; ++i) {
        Subspace s = spin(field, {standard_basis_vector(field, d, i)}, gens);
        if (!best || s.dim() < best->dim()) best = std::move(s);
    }
    const std::uint64_t exhaustive_limit = std::uint64_t{1} << 16;
    while (true) {
        if (best->dim() == 1) return {*best, true};
        Section restriction(*best, Subspace(field, d));
        if (acts_with_full_algebra(field, best->dim(), restriction.action(gens))) return {*best, true};

        const bool exhaustive = field.is_finite() && saturating_power(*field.order(), best->dim()) <= exhaustive_limit;
        std::vector<Vector> seeds;
        if (exhaustive) {
            for_each_projective_point(field, best->dim(), [&](const Vector& c) { seeds.push_back(restriction.lift(c)); });
        } else {
            const auto& basis = best->basis();
            seeds = basis;
            for (std::size_t a = 0; a < basis.size(); ++a) {
                for (std::size_t b = a + 1; b < basis.size(); ++b) {
                    Vector plus(d), minus(d);
                    for (std::size_t j = 0; j < d; ++j) {
                        plus[j] = field.add(basis[a][j], basis[b][j]);
                        minus[j] = field.sub(basis[a][j], basis[b][j]);
                    }
                    seeds.push_back(std::move(plus));
                    seeds.push_back(std::move(minus));
                }
            }
        }
        std::optional<Subspace> smaller;
        for (const Vector& v : seeds) {
            if (is_zero_vector(field, v)) continue;
            Subspace s = spin(field, {v}, gens);
            if (s.dim() < best->dim() && (!smaller || s.dim() < smaller->dim())) smaller = std::move(s);
        }
        if (!exhaustive && !smaller) {
            const std::vector<Matrix> local = restriction.action(gens);
            for (const Subspace& k : commutant_kernels(field, best->dim(), local)) {
                Subspace s = restriction.lift(k);
                if (!smaller || s.dim() < smaller->dim()) smaller = std::move(s);
            }
        }
        if (!smaller) return {*best, exhaustive};
        best = std::move(smaller);
    }
}

ModuleDecomposition composition_series(const MatrixTuple& h, const SearchOptions& options) {
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    ModuleDecomposition out;
    out.socle_series = socle_series(h, options);
    out.series.push_back(Subspace(f, n));
    for (std::size_t layer = 0; layer + 1 < out.socle_series.size(); ++layer) {
        const Subspace& upper = out.socle_series[layer + 1];
        while (out.series.back() != upper) {
            const Subspace lower = out.series.back();
            Section section(upper, lower);
            const std::vector<Matrix> action = section.action(gens_of(h));
            MinimalSubspace minimal = minimal_invariant_subspace(f, section.dim(), action);
            Subspace next = section.lift(minimal.subspace);
            Section factor(next, lower);
            const std::vector<Matrix> factor_action = factor.action(gens_of(h));
            out.factor_dimensions.push_back(factor.dim());
            out.factor_commutant_dimensions.push_back(commutant(factor_action, f, factor.dim()).size());
            out.factor_certified.push_back(minimal.certified);
            out.series.push_back(std::move(next));
        }
    }
    for (std::size_t i = 1; i + 1 < out.series.size(); ++i) {
        out.complements.push_back(has_invariant_complement(h, out.series[i]));
        if (!out.complements.back()) out.semisimple = false;
    }
    GCR_ASSERT(out.semisimple == (out.socle_series.size() == 2), "semisimple iff the socle is everything");
    return out;
}

bool verify_witness(const MatrixTuple& h, const WitnessParabolic& witness) {
    const auto& flag = witness.flag;
    const std::size_t n = h.dimension();
    if (flag.size() < 2 || !flag.back().is_full()) return false;
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (flag[i].ambient() != n || flag[i].is_zero()) return false;
        if (i > 0 && !(flag[i].contains(flag[i - 1]) && flag[i].dim() > flag[i - 1].dim())) return false;
        if (!flag[i].is_stable(gens_of(h))) return false;
    }
    if (!(witness.cocharacter == cocharacter_from_flag(flag))) return false;
    if (witness.reason == WitnessParabolic::Reason::no_complement) {
        return witness.step + 1 < flag.size() && !has_invariant_complement(h, flag[witness.step]);
    }
    const Matrix id = Matrix::identity(h.field(), n);
    for (const Matrix& x : h) {
        const Matrix d = x - id;
        for (std::size_t i = 0; i < flag.size(); ++i) {
            const Subspace below = i == 0 ? Subspace(h.field(), n) : flag[i - 1];
            for (const Vector& v : flag[i].basis()) {
                if (!below.contains(d.apply(v))) return false;
            }
        }
    }
    return true;
}

CrResult is_completely_reducible(const MatrixTuple& h, const SearchOptions& options) {
    CrResult out;
    out.decomposition = composition_series(h, options);
    out.completely_reducible = out.decomposition.semisimple;
    if (!out.completely_reducible) {
        WitnessParabolic w;
        w.flag = {out.decomposition.socle_series[1], Subspace::full(h.field(), h.dimension())};
        w.cocharacter = cocharacter_from_flag(w.flag);
        w.reason = WitnessParabolic::Reason::no_complement;
        w.step = 0;
        GCR_ASSERT(!has_invariant_complement(h, w.flag[0]), "a proper socle has no invariant complement");
        out.witness = std::move(w);
    }
    return out;
}

bool orbit_closed(const MatrixTuple& h, const SearchOptions& options) {
    return is_completely_reducible(h, options).completely_reducible;
}

Semisimplification semisimplify(const MatrixTuple& h, const SearchOptions& options) {
    std::vector<Subspace> flag = nonzero_members(socle_series(h, options));
    Cocharacter lambda = cocharacter_from_flag(flag);
    auto limit = limit_tuple(lambda, h);
    GCR_ASSERT(limit.has_value(), "a flag-adapted cocharacter has a limit on a flag-stable tuple");
    return {std::move(*limit), std::move(lambda), std::move(flag)};
}

WitnessParabolic borel_tits_flag(const MatrixTuple& u) {
    const Field& f = u.field();
    const std::size_t n = u.dimension();
    const Matrix id = Matrix::identity(f, n);
    for (const Matrix& x : u) {
        if (!power(x - id, n).is_zero()) throw InvalidArgument("generator not unipotent");
    }
    if (std::all_of(u.begin(), u.end(), [](const Matrix& x) { return x.is_identity(); })) {
        throw InvalidArgument("trivial subgroup: every generator is the identity");
    }
    WitnessParabolic out;
    Subspace current(f, n);
    while (!current.is_full()) {
        const Matrix ann = annihilator(current);
        std::vector<Vector> rows;
        for (const Matrix& x : u) {
            for (Vector& r : rows_of(ann * (x - id))) rows.push_back(std::move(r));
        }
        Subspace next = Subspace::span(f, n, kernel_basis(stack_rows(f, n, rows)));
        if (next == current) throw InvalidArgument("generators do not generate a unipotent group");
        out.flag.push_back(next);
        current = std::move(next);
    }
    out.cocharacter = cocharacter_from_flag(out.flag);
    out.reason = WitnessParabolic::Reason::borel_tits;
    out.step = 0;
    return out;
}

std::size_t orbit_dimension(const MatrixTuple& h) {
    const std::size_t n = h.dimension();
    return n * n - commutant(h).size();
}

MatrixTuple block_diagonal(const MatrixTuple& a, const MatrixTuple& b) {
    if (a.size() != b.size()) throw InvalidArgument("tuples have different numbers of components");
    if (a.field() != b.field()) throw InvalidArgument("tuples are over different fields");
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(direct_sum(a[k], b[k]));
    return MatrixTuple(a.field(), a.dimension() + b.dimension(), std::move(out));
}

ProductVerdict product_check(const MatrixTuple& h1, const MatrixTuple& h2, const SearchOptions& options) {
    const MatrixTuple combined = block_diagonal(h1, h2);
    ProductVerdict out;
    out.first = orbit_closed(h1, options);
    out.second = orbit_closed(h2, options);
    out.combined = orbit_closed(combined, options);
    return out;
}

std::optional<Matrix> ru_conjugator(const MatrixTuple& h, const Cocharacter& lambda, const SearchOptions& options) {
    require_finite(h.field(), "unipotent radical search");
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    auto limit = limit_tuple(lambda, h);
    if (!limit) throw InvalidArgument("limit does not exist");
    const auto positions = ParabolicData(lambda).radical_positions();
    const std::uint64_t count = saturating_power(*f.order(), positions.size());
    if (count > options.budget) {
        throw BudgetExceeded("R_u(P_lambda) has " + std::to_string(count) + " elements, budget " +
                             std::to_string(options.budget));
    }
    std::optional<Matrix> g_inv;
    if (lambda.conjugator) g_inv = inverse(*lambda.conjugator);
    auto element = [&](std::uint64_t idx) {
        Matrix u = radical_element(f, n, positions, vector_at(f, positions.size(), idx));
        if (lambda.conjugator) u = *lambda.conjugator * u * *g_inv;
        return u;
    };
    auto hit = find_first(count, options.threads, [&](std::uint64_t idx) {
        const Matrix u = element(idx);
        for (std::size_t k = 0; k < h.size(); ++k) {
            if (u * h[k] != (*limit)[k] * u) return false;
        }
        return true;
    });
    if (!hit) return std::nullopt;
    return element(*hit);
}

std::optional<TupleWitness> tuple_witness_search(const MatrixTuple& h, const SearchOptions& options) {
    CrResult cr = is_completely_reducible(h, options);
    if (cr.completely_reducible) return std::nullopt;
    const Field& f = h.field();
    const std::size_t n = h.dimension();

    // Blocks of the socle-series basis; block b holds the vectors first
    // appearing in the b-th nonzero member.
    const std::vector<Subspace> layers = nonzero_members(cr.decomposition.socle_series);
    const Cocharacter adapted = cocharacter_from_flag(layers);
    const std::size_t blocks = layers.size();
    std::vector<std::size_t> block_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        block_of[i] = blocks - 1 - static_cast<std::size_t>(adapted.exponents[i]);
    }
    const Matrix& g = *adapted.conjugator;
    const Matrix g_inv = *inverse(g);
    std::set<Character> weights;
    for (const Matrix& x : h) {
        const Matrix y = g_inv * x * g;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (block_of[i] == block_of[j] || f.is_zero(y(i, j))) continue;
                Character chi(blocks, 0);
                chi[block_of[i]] += 1;
                chi[block_of[j]] -= 1;
                weights.insert(std::move(chi));
            }
        }
    }
    GCR_ASSERT(!weights.empty(), "a non-semisimple module has a nonzero off-diagonal block");
    const WeightSet block_weights(blocks, std::vector<Character>(weights.begin(), weights.end()));

    TupleWitness out;
    out.report = optimal_cocharacter(block_weights);
    GCR_ASSERT(!out.report.semistable, "off-diagonal block weights are strictly destabilised");
    std::vector<std::int64_t> expanded(n);
    for (std::size_t i = 0; i < n; ++i) expanded[i] = (*out.report.optimal_cocharacter)[block_of[i]];
    out.optimal = Cocharacter(std::move(expanded), g);

    const std::vector<Subspace> flag = flag_of(out.optimal, f);
    std::optional<WitnessParabolic> found;
    for (std::size_t i = 0; i + 1 < flag.size(); ++i) {
        GCR_ASSERT(flag[i].is_stable(gens_of(h)), "the optimal flag is stable");
        if (!has_invariant_complement(h, flag[i])) {
            found = WitnessParabolic{flag, cocharacter_from_flag(flag), WitnessParabolic::Reason::no_complement, i};
            break;
        }
    }
    out.witness = found ? std::move(*found) : std::move(*cr.witness);
    return out;
}

MatrixTuple normal_closure(const MatrixTuple& h, const std::vector<std::size_t>& subset, const SearchOptions& options) {
    require_finite(h.field(), "normal closure");
    for (std::size_t idx : subset) {
        if (idx >= h.size()) throw InvalidArgument("generator index " + std::to_string(idx) + " out of range");
    }
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    std::vector<Matrix> conjugates;
    std::set<MatrixKey> seen;
    if (!subset.empty()) {
        for (const Matrix& g : group_closure(h, options)) {
            const Matrix g_inv = *inverse(g);
            for (std::size_t idx : subset) {
                Matrix c = g * h[idx] * g_inv;
                if (seen.insert(key_of(c)).second) conjugates.push_back(std::move(c));
            }
        }
    }
    if (conjugates.empty()) conjugates.push_back(Matrix::identity(f, n));
    return MatrixTuple(f, n, group_closure(MatrixTuple(f, n, std::move(conjugates)), options));
}

MatrixTuple conjugation_representation(const MatrixTuple& h, const std::vector<Matrix>& basis) {
    if (basis.empty()) throw InvalidArgument("empty basis");
    const Field& f = h.field();
    const std::size_t n = h.dimension();
    const std::size_t k = basis.size();
    Matrix columns(f, n * n, k);
    for (std::size_t j = 0; j < k; ++j) {
        if (basis[j].rows() != n || basis[j].cols() != n) throw InvalidArgument("basis matrix has the wrong size");
        const Vector flat = flatten(basis[j]);
        for (std::size_t i = 0; i < n * n; ++i) columns.set(i, j, flat[i]);
    }
    if (rank(columns) != k) throw InvalidArgument("basis matrices are linearly dependent");
    std::vector<Matrix> out;
    for (const Matrix& x : h) {
        const Matrix x_inv = *inverse(x);
        Matrix rep(f, k, k);
        for (std::size_t j = 0; j < k; ++j) {
            auto sol = solve_affine(columns, flatten(x * basis[j] * x_inv));
            if (!sol) throw InvalidArgument("span of the basis is not invariant under conjugation");
            for (std::size_t i = 0; i < k; ++i) rep.set(i, j, sol->particular[i]);
        }
        out.push_back(std::move(rep));
    }
    return MatrixTuple(f, k, std::move(out));
}

std::vector<Matrix> trace_zero_basis(const Field& field, std::size_t n) {
    if (n < 2) throw InvalidArgument("trace-zero space needs n >= 2");
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) out.push_back(Matrix::unit(field, n, i, j));
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(Matrix::unit(field, n, i, i) - Matrix::unit(field, n, n - 1, n - 1));
    return out;
}

MatrixTuple sl2_generators(const Field& field) {
    return MatrixTuple(field, 2, {Matrix::from_ints(field, {{1, 1}, {0, 1}}), Matrix::from_ints(field, {{1, 0}, {1, 1}})});
}

MatrixTuple adjoint_sl2(const Field& field) {
    return conjugation_representation(sl2_generators(field), trace_zero_basis(field, 2));
}

}  // namespace gcr
