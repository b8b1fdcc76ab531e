#include "gcr/torus.hpp"

#include <algorithm>
#include <numeric>

namespace gcr {

Cocharacter::Cocharacter(std::vector<std::int64_t> e, std::optional<Matrix> g)
    : exponents(std::move(e)), conjugator(std::move(g)) {
    if (conjugator) {
        if (!conjugator->is_square() || conjugator->rows() != exponents.size()) {
            throw InvalidArgument("conjugator dimension does not match cocharacter length");
        }
        if (!is_invertible(*conjugator)) throw InvalidArgument("conjugator not invertible");
    }
}

Cocharacter Cocharacter::scaled(std::int64_t factor) const {
    Cocharacter out = *this;
    for (auto& e : out.exponents) e *= factor;
    return out;
}

std::int64_t pairing(const Cocharacter& lambda, const Character& chi) {
    if (lambda.is_conjugated()) throw InvalidArgument("pairing requires an unconjugated cocharacter");
    if (lambda.exponents.size() != chi.size()) throw InvalidArgument("pairing: length mismatch");
    return std::inner_product(lambda.exponents.begin(), lambda.exponents.end(), chi.begin(), std::int64_t{0});
}

ParabolicData::ParabolicData(Cocharacter lambda) : lambda_(std::move(lambda)) {
    if (lambda_.conjugator) conjugator_inverse_ = inverse(*lambda_.conjugator);
    const auto& e = lambda_.exponents;
    permutation_.resize(e.size());
    std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
    std::stable_sort(permutation_.begin(), permutation_.end(),
                     [&](std::size_t a, std::size_t b) { return e[a] > e[b]; });
    for (std::size_t k = 0; k < permutation_.size(); ++k) {
        if (k == 0 || e[permutation_[k]] != e[permutation_[k - 1]]) {
            block_sizes_.push_back(1);
        } else {
            ++block_sizes_.back();
        }
    }
}

Matrix ParabolicData::to_torus_coordinates(const Matrix& x) const {
    if (!x.is_square() || x.rows() != lambda_.dimension()) {
        throw InvalidArgument("matrix dimension does not match cocharacter");
    }
    if (!lambda_.conjugator) return x;
    return *conjugator_inverse_ * x * *lambda_.conjugator;
}

bool ParabolicData::in_parabolic(const Matrix& x) const {
    Matrix y = to_torus_coordinates(x);
    const auto& e = lambda_.exponents;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (e[i] < e[j] && !y.field().is_zero(y(i, j))) return false;
        }
    }
    return true;
}

bool ParabolicData::in_levi(const Matrix& x) const {
    Matrix y = to_torus_coordinates(x);
    const auto& e = lambda_.exponents;
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (e[i] != e[j] && !y.field().is_zero(y(i, j))) return false;
        }
    }
    return true;
}

bool ParabolicData::in_unipotent_radical(const Matrix& x) const {
    Matrix y = to_torus_coordinates(x);
    const auto& e = lambda_.exponents;
    const Field& f = y.field();
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (e[i] < e[j] && !f.is_zero(y(i, j))) return false;
            if (e[i] == e[j] && !(i == j ? f.is_one(y(i, j)) : f.is_zero(y(i, j)))) return false;
        }
    }
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> ParabolicData::radical_positions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const auto& e = lambda_.exponents;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[i] > e[j]) out.emplace_back(i, j);
        }
    }
    return out;
}

ParabolicData parabolic_of(const Cocharacter& lambda) { return ParabolicData(lambda); }

std::optional<Matrix> limit_conj(const Cocharacter& lambda, const Matrix& x) {
    if (!x.is_square() || x.rows() != lambda.dimension()) {
        throw InvalidArgument("matrix dimension does not match cocharacter");
    }
    std::optional<Matrix> g_inv;
    Matrix y = x;
    if (lambda.conjugator) {
        g_inv = inverse(*lambda.conjugator);
        y = *g_inv * x * *lambda.conjugator;
    }
    const auto& e = lambda.exponents;
    const Field& f = x.field();
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (e[i] < e[j] && !f.is_zero(y(i, j))) return std::nullopt;
            if (e[i] > e[j]) y.set(i, j, f.zero());
        }
    }
    if (lambda.conjugator) return *lambda.conjugator * y * *g_inv;
    return y;
}

std::optional<MatrixTuple> limit_tuple(const Cocharacter& lambda, const MatrixTuple& h) {
    std::vector<Matrix> out;
    out.reserve(h.size());
    for (const Matrix& x : h) {
        auto lim = limit_conj(lambda, x);
        if (!lim) return std::nullopt;
        out.push_back(std::move(*lim));
    }
    return MatrixTuple(h.field(), h.dimension(), std::move(out));
}

bool fixes(const Cocharacter& lambda, const Matrix& x) {
    auto lim = limit_conj(lambda, x);
    return lim && *lim == x;
}

bool fixes(const Cocharacter& lambda, const MatrixTuple& h) {
    return std::all_of(h.begin(), h.end(), [&](const Matrix& x) { return fixes(lambda, x); });
}

Cocharacter cocharacter_from_flag(std::span<const Subspace> flag) {
    if (flag.empty()) throw InvalidArgument("flag must not be empty");
    const Field& f = flag.front().field();
    const std::size_t n = flag.front().ambient();
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (flag[i].ambient() != n) throw InvalidArgument("flag members have different ambient dimensions");
        if (flag[i].is_zero()) throw InvalidArgument("flag not strictly increasing (zero member)");
        if (i > 0 && !(flag[i].contains(flag[i - 1]) && flag[i].dim() > flag[i - 1].dim())) {
            throw InvalidArgument("flag not strictly increasing");
        }
    }
    if (!flag.back().is_full()) throw InvalidArgument("flag not exhaustive (last member must be the whole space)");

    const std::int64_t t = static_cast<std::int64_t>(flag.size());
    EchelonBuilder echelon(f, n);
    std::vector<Vector> columns;
    std::vector<std::int64_t> exponents;
    for (std::size_t i = 0; i < flag.size(); ++i) {
        for (const Vector& v : flag[i].basis()) {
            if (echelon.add(v)) {
                columns.push_back(v);
                exponents.push_back(t - 1 - static_cast<std::int64_t>(i));
            }
        }
    }
    GCR_ASSERT(columns.size() == n, "adapted basis spans the space");
    Matrix g = Matrix::from_rows(f, columns).transpose();
    return Cocharacter(std::move(exponents), std::move(g));
}

bool stabilizes_flag(const Matrix& x, std::span<const Subspace> flag) {
    for (const Subspace& v : flag) {
        if (!v.is_stable(std::span<const Matrix>(&x, 1))) return false;
    }
    return true;
}

std::vector<Subspace> flag_of(const Cocharacter& lambda, const Field& field) {
    const std::size_t n = lambda.dimension();
    Matrix g = lambda.conjugator ? *lambda.conjugator : Matrix::identity(field, n);
    std::vector<std::int64_t> distinct = lambda.exponents;
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<Subspace> flag;
    for (std::int64_t threshold : distinct) {
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < n; ++j) {
            if (lambda.exponents[j] >= threshold) cols.push_back(g.column(j));
        }
        flag.push_back(Subspace::span(field, n, cols));
    }
    return flag;
}

}  // namespace gcr
