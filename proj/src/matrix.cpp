#include "gcr/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace gcr {

namespace {

void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw InvalidArgument("field mismatch: " + a.describe() + " vs " + b.describe());
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, field.one());
    return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<Vector>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidArgument("jagged matrix");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_ints(const Field& field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<Vector> data;
    for (const auto& r : rows) {
        Vector row;
        for (std::int64_t v : r) row.push_back(field.from_int(v));
        data.push_back(std::move(row));
    }
    return from_rows(field, data);
}

Matrix Matrix::unit(const Field& field, std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(field, n, n);
    m.set(i, j, field.one());
    return m;
}

Matrix Matrix::diagonal(const Field& field, const Vector& entries) {
    Matrix m(field, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
    return m;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require_same_field(field_, rhs.field_);
    if (cols_ != rhs.rows_) throw InvalidArgument("dimension mismatch in matrix product");
    Matrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (field_.is_zero(a)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Scalar& b = rhs(k, j);
                if (field_.is_zero(b)) continue;
                out.set(i, j, field_.add(out(i, j), field_.mul(a, b)));
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    require_same_field(field_, rhs.field_);
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("dimension mismatch in sum");
    Matrix out(field_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        out.entries_[k] = field_.add(entries_[k], rhs.entries_[k]);
    }
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    require_same_field(field_, rhs.field_);
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("dimension mismatch in difference");
    Matrix out(field_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        out.entries_[k] = field_.sub(entries_[k], rhs.entries_[k]);
    }
    return out;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix out(field_, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = field_.mul(c, entries_[k]);
    return out;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw InvalidArgument("dimension mismatch in matrix-vector product");
    Vector out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (field_.is_zero(v[j])) continue;
            out[i] = field_.add(out[i], field_.mul((*this)(i, j), v[j]));
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
    }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [this](const Scalar& s) { return field_.is_zero(s); });
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& s = (*this)(i, j);
            if (i == j ? !field_.is_one(s) : !field_.is_zero(s)) return false;
        }
    }
    return true;
}

bool Matrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i != j && !field_.is_zero((*this)(i, j))) return false;
        }
    }
    return true;
}

bool Matrix::lex_less(const Matrix& rhs) const {
    if (rows_ != rhs.rows_) return rows_ < rhs.rows_;
    if (cols_ != rhs.cols_) return cols_ < rhs.cols_;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const Scalar& a = entries_[k];
        const Scalar& b = rhs.entries_[k];
        if (a == b) continue;
        if (a.is_residue()) return a.residue() < b.residue();
        return a.rational() < b.rational();
    }
    return false;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) {
            os << (j ? ", " : "") << field_.format((*this)(i, j));
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Matrix power(const Matrix& m, std::uint64_t e) {
    if (!m.is_square()) throw InvalidArgument("power of a non-square matrix");
    Matrix result = Matrix::identity(m.field(), m.rows());
    Matrix base = m;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Scalar determinant(const Matrix& m) {
    if (!m.is_square()) throw InvalidArgument("determinant of a non-square matrix");
    const Field& f = m.field();
    const std::size_t n = m.rows();
    Matrix a = m;
    Scalar det = f.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && f.is_zero(a(pivot, col))) ++pivot;
        if (pivot == n) return f.zero();
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                Scalar tmp = a(col, j);
                a.set(col, j, a(pivot, j));
                a.set(pivot, j, tmp);
            }
            det = f.neg(det);
        }
        det = f.mul(det, a(col, col));
        Scalar inv_pivot = f.inv(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (f.is_zero(a(i, col))) continue;
            Scalar factor = f.mul(a(i, col), inv_pivot);
            for (std::size_t j = col; j < n; ++j) {
                a.set(i, j, f.sub(a(i, j), f.mul(factor, a(col, j))));
            }
        }
    }
    return det;
}

bool is_invertible(const Matrix& m) {
    return m.is_square() && !m.field().is_zero(determinant(m));
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) throw InvalidArgument("inverse of a non-square matrix");
    const Field& f = m.field();
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(f, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && f.is_zero(a(pivot, col))) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                Scalar t = a(col, j);
                a.set(col, j, a(pivot, j));
                a.set(pivot, j, t);
                t = inv(col, j);
                inv.set(col, j, inv(pivot, j));
                inv.set(pivot, j, t);
            }
        }
        Scalar scale = f.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a.set(col, j, f.mul(a(col, j), scale));
            inv.set(col, j, f.mul(inv(col, j), scale));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || f.is_zero(a(i, col))) continue;
            Scalar factor = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.set(i, j, f.sub(a(i, j), f.mul(factor, a(col, j))));
                inv.set(i, j, f.sub(inv(i, j), f.mul(factor, inv(col, j))));
            }
        }
    }
    return inv;
}

Matrix conjugate(const Matrix& g, const Matrix& x) {
    auto g_inv = inverse(g);
    if (!g_inv) throw InvalidArgument("conjugator not invertible");
    return g * x * *g_inv;
}

Scalar trace(const Matrix& m) {
    if (!m.is_square()) throw InvalidArgument("trace of a non-square matrix");
    Scalar t = m.field().zero();
    for (std::size_t i = 0; i < m.rows(); ++i) t = m.field().add(t, m(i, i));
    return t;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field());
    Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a(i, j));
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) out.set(a.rows() + i, a.cols() + j, b(i, j));
    }
    return out;
}

Scalar dot(const Field& field, const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InvalidArgument("dimension mismatch in dot product");
    Scalar s = field.zero();
    for (std::size_t i = 0; i < a.size(); ++i) s = field.add(s, field.mul(a[i], b[i]));
    return s;
}

bool is_zero_vector(const Field& field, const Vector& v) {
    return std::all_of(v.begin(), v.end(), [&](const Scalar& s) { return field.is_zero(s); });
}

Vector standard_basis_vector(const Field& field, std::size_t n, std::size_t i) {
    Vector v(n, field.zero());
    v.at(i) = field.one();
    return v;
}

namespace {

const Matrix& first_component(const std::vector<Matrix>& components) {
    if (components.empty()) throw InvalidArgument("empty generator list");
    return components.front();
}

}  // namespace

MatrixTuple::MatrixTuple(Field field, std::size_t n, std::vector<Matrix> components)
    : field_(field), n_(n), components_(std::move(components)) {
    validate();
}

MatrixTuple::MatrixTuple(std::vector<Matrix> components)
    : field_(first_component(components).field()),
      n_(first_component(components).rows()),
      components_(std::move(components)) {
    validate();
}

void MatrixTuple::validate() const {
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const Matrix& h = components_[i];
        if (!(h.field() == field_)) throw InvalidArgument("generator " + std::to_string(i) + " has the wrong field");
        if (h.rows() != n_ || h.cols() != n_) {
            throw InvalidArgument("generator " + std::to_string(i) + " has the wrong dimension");
        }
        if (!is_invertible(h)) throw InvalidArgument("generator not invertible");
    }
}

MatrixTuple MatrixTuple::conjugated(const Matrix& g) const {
    auto g_inv = inverse(g);
    if (!g_inv) throw InvalidArgument("conjugator not invertible");
    std::vector<Matrix> out;
    out.reserve(components_.size());
    for (const Matrix& h : components_) out.push_back(g * h * *g_inv);
    return MatrixTuple(field_, n_, std::move(out));
}

}  // namespace gcr
