#include "gcr/linalg.hpp"

#include <deque>

namespace gcr {

RrefResult rref(const Matrix& m) {
    const Field& f = m.field();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.rows() && f.is_zero(a(pivot, col))) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                Scalar t = a(row, j);
                a.set(row, j, a(pivot, j));
                a.set(pivot, j, t);
            }
        }
        Scalar scale = f.inv(a(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a.set(row, j, f.mul(a(row, j), scale));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || f.is_zero(a(i, col))) continue;
            Scalar factor = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) {
                a.set(i, j, f.sub(a(i, j), f.mul(factor, a(row, j))));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    std::size_t r = pivots.size();
    return {std::move(a), std::move(pivots), r};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
    if (a.rows() != b.size()) throw InvalidArgument("dimension mismatch: A has " + std::to_string(a.rows()) +
                                                    " rows but b has length " + std::to_string(b.size()));
    const Field& f = a.field();
    Matrix aug(f, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a(i, j));
        aug.set(i, a.cols(), b[i]);
    }
    RrefResult r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(a.cols(), f.zero());
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t i = 0; i < r.rank; ++i) {
        is_pivot[r.pivots[i]] = true;
        sol.particular[r.pivots[i]] = r.reduced(i, a.cols());
    }
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector k(a.cols(), f.zero());
        k[free] = f.one();
        for (std::size_t i = 0; i < r.rank; ++i) k[r.pivots[i]] = f.neg(r.reduced(i, free));
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

std::vector<Vector> kernel_basis(const Matrix& a) {
    return solve_affine(a, Vector(a.rows(), a.field().zero()))->kernel;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(Field field, std::size_t ambient) : field_(field), ambient_(ambient) {}

Subspace Subspace::span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(field, ambient);
    if (vectors.empty()) return s;
    for (const Vector& v : vectors) {
        if (v.size() != ambient) throw InvalidArgument("vector length does not match ambient dimension");
    }
    RrefResult r = rref(Matrix::from_rows(field, vectors));
    for (std::size_t i = 0; i < r.rank; ++i) s.basis_.push_back(r.reduced.row(i));
    s.pivots_ = std::move(r.pivots);
    return s;
}

Subspace Subspace::full(const Field& field, std::size_t ambient) {
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < ambient; ++i) basis.push_back(standard_basis_vector(field, ambient, i));
    return span(field, ambient, basis);
}

Matrix Subspace::basis_matrix() const {
    Matrix m(field_, basis_.size(), ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = 0; j < ambient_; ++j) m.set(i, j, basis_[i][j]);
    }
    return m;
}

Vector Subspace::reduce(const Vector& v) const {
    if (v.size() != ambient_) throw InvalidArgument("vector length does not match ambient dimension");
    Vector r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        Scalar c = r[pivots_[i]];
        if (field_.is_zero(c)) continue;
        for (std::size_t j = 0; j < ambient_; ++j) {
            if (!field_.is_zero(basis_[i][j])) r[j] = field_.sub(r[j], field_.mul(c, basis_[i][j]));
        }
    }
    return r;
}

bool Subspace::contains(const Vector& v) const { return is_zero_vector(field_, reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    for (const Vector& v : other.basis_) {
        if (!contains(v)) return false;
    }
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    std::vector<Vector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(field_, ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
    // x in both iff x is killed by both annihilators.
    Matrix a = annihilator(*this);
    Matrix b = annihilator(other);
    Matrix stacked(field_, a.rows() + b.rows(), ambient_);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < ambient_; ++j) stacked.set(i, j, a(i, j));
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < ambient_; ++j) stacked.set(a.rows() + i, j, b(i, j));
    }
    if (stacked.rows() == 0) return full(field_, ambient_);
    return span(field_, ambient_, kernel_basis(stacked));
}

Subspace Subspace::image(const Matrix& m) const {
    std::vector<Vector> images;
    for (const Vector& v : basis_) images.push_back(m.apply(v));
    return span(field_, ambient_, images);
}

bool Subspace::is_stable(std::span<const Matrix> gens) const {
    for (const Matrix& h : gens) {
        for (const Vector& v : basis_) {
            if (!contains(h.apply(v))) return false;
        }
    }
    return true;
}

Matrix annihilator(const Subspace& w) {
    const Field& f = w.field();
    const std::size_t n = w.ambient();
    if (w.is_zero()) return Matrix::identity(f, n);
    std::vector<Vector> rows = kernel_basis(w.basis_matrix());
    if (rows.empty()) return Matrix(f, 0, n);
    return Matrix::from_rows(f, rows);
}

// ---------------------------------------------------------------------------

EchelonBuilder::EchelonBuilder(Field field, std::size_t ambient) : field_(field), ambient_(ambient) {}

Vector EchelonBuilder::reduce(Vector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Scalar c = v[pivots_[i]];
        if (field_.is_zero(c)) continue;
        for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
            if (!field_.is_zero(rows_[i][j])) v[j] = field_.sub(v[j], field_.mul(c, rows_[i][j]));
        }
    }
    return v;
}

bool EchelonBuilder::add(const Vector& v) {
    if (v.size() != ambient_) throw InvalidArgument("vector length does not match ambient dimension");
    Vector r = reduce(v);
    std::size_t pivot = 0;
    while (pivot < ambient_ && field_.is_zero(r[pivot])) ++pivot;
    if (pivot == ambient_) return false;
    Scalar scale = field_.inv(r[pivot]);
    for (std::size_t j = pivot; j < ambient_; ++j) r[j] = field_.mul(r[j], scale);
    // Rows stay sorted by pivot; every row vanishes left of its pivot, so a
    // single left-to-right sweep in reduce() clears all pivot columns.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
}

bool EchelonBuilder::contains(const Vector& v) const { return is_zero_vector(field_, reduce(v)); }

Subspace EchelonBuilder::subspace() const { return Subspace::span(field_, ambient_, rows_); }

// ---------------------------------------------------------------------------

Subspace spin(const Field& field, const std::vector<Vector>& seeds, std::span<const Matrix> gens) {
    if (seeds.empty()) throw InvalidArgument("spin requires at least one seed vector");
    const std::size_t n = seeds.front().size();
    for (const Matrix& h : gens) {
        if (h.rows() != n || h.cols() != n) throw InvalidArgument("generator dimension does not match seeds");
    }
    EchelonBuilder echelon(field, n);
    std::deque<Vector> queue;
    for (const Vector& s : seeds) {
        if (s.size() != n) throw InvalidArgument("seed vectors of different lengths");
        if (echelon.add(s)) queue.push_back(s);
    }
    while (!queue.empty() && echelon.dim() < n) {
        Vector v = std::move(queue.front());
        queue.pop_front();
        for (const Matrix& h : gens) {
            Vector w = h.apply(v);
            if (echelon.add(w)) queue.push_back(std::move(w));
        }
    }
    return echelon.subspace();
}

Subspace spin(const std::vector<Vector>& seeds, const MatrixTuple& gens) {
    if (!seeds.empty() && seeds.front().size() != gens.dimension()) {
        throw InvalidArgument("seed length does not match generators");
    }
    return spin(gens.field(), seeds, gens.components());
}

std::vector<Matrix> commutant(std::span<const Matrix> gens, const Field& field, std::size_t n) {
    const std::size_t unknowns = n * n;
    // Unknown A_{ik} sits at index i * n + k. Row (g, i, j) encodes
    // (A h - h A)_{ij} = sum_k A_{ik} h_{kj} - sum_k h_{ik} A_{kj}.
    Matrix system(field, gens.size() * unknowns, unknowns);
    std::size_t row = 0;
    for (const Matrix& h : gens) {
        if (h.rows() != n || h.cols() != n) throw InvalidArgument("commutant: generator dimension mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j, ++row) {
                for (std::size_t k = 0; k < n; ++k) {
                    system.set(row, i * n + k, field.add(system(row, i * n + k), h(k, j)));
                    system.set(row, k * n + j, field.sub(system(row, k * n + j), h(i, k)));
                }
            }
        }
    }
    std::vector<Vector> kernel;
    if (system.rows() == 0) {
        for (std::size_t i = 0; i < unknowns; ++i) kernel.push_back(standard_basis_vector(field, unknowns, i));
    } else {
        kernel = kernel_basis(system);
    }
    Subspace canonical = Subspace::span(field, unknowns, kernel);
    std::vector<Matrix> basis;
    for (const Vector& v : canonical.basis()) basis.push_back(unflatten(field, n, n, v));
    return basis;
}

std::vector<Matrix> commutant(const MatrixTuple& gens) {
    return commutant(gens.components(), gens.field(), gens.dimension());
}

// ---------------------------------------------------------------------------

Section::Section(const Subspace& upper, const Subspace& lower) : upper_(upper), lower_(lower) {
    if (!upper.contains(lower)) throw InvalidArgument("section: lower subspace not contained in upper");
    std::vector<Vector> reduced;
    for (const Vector& u : upper.basis()) reduced.push_back(lower.reduce(u));
    Subspace s = Subspace::span(upper.field(), upper.ambient(), reduced);
    basis_ = s.basis();
    pivots_ = s.pivots();
    GCR_ASSERT(basis_.size() + lower.dim() == upper.dim(), "section dimension");
}

Vector Section::coordinates(const Vector& u) const {
    Vector r = lower_.reduce(u);
    Vector coords;
    coords.reserve(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) coords.push_back(r[pivots_[k]]);
    if (lift(coords) != r) throw InvalidArgument("section: vector does not lie in the upper subspace");
    return coords;
}

Vector Section::lift(const Vector& coords) const {
    const Field& f = upper_.field();
    Vector v(upper_.ambient(), f.zero());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (f.is_zero(coords[k])) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(coords[k], basis_[k][j]));
    }
    return v;
}

Subspace Section::lift(const Subspace& s) const {
    std::vector<Vector> vectors = lower_.basis();
    for (const Vector& c : s.basis()) vectors.push_back(lift(c));
    return Subspace::span(upper_.field(), upper_.ambient(), vectors);
}

Matrix Section::action(const Matrix& h) const {
    Matrix m(upper_.field(), basis_.size(), basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        Vector c = coordinates(h.apply(basis_[k]));
        for (std::size_t i = 0; i < c.size(); ++i) m.set(i, k, c[i]);
    }
    return m;
}

std::vector<Matrix> Section::action(std::span<const Matrix> gens) const {
    std::vector<Matrix> out;
    out.reserve(gens.size());
    for (const Matrix& h : gens) out.push_back(action(h));
    return out;
}

Vector flatten(const Matrix& m) { return m.entries(); }

Matrix unflatten(const Field& field, std::size_t rows, std::size_t cols, const Vector& v) {
    if (v.size() != rows * cols) throw InvalidArgument("unflatten: size mismatch");
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, v[i * cols + j]);
    }
    return m;
}

}  // namespace gcr
