#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "gcr/field.hpp"

namespace gcr {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over an exact field. Matrices act on column
/// vectors: h * v.
class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& field, std::size_t n);
    static Matrix from_rows(const Field& field, const std::vector<Vector>& rows);
    /// Convenience for literals in tests and the corpus.
    static Matrix from_ints(const Field& field,
                            std::initializer_list<std::initializer_list<std::int64_t>> rows);
    /// E_{ij}: one at (i, j), zero elsewhere.
    static Matrix unit(const Field& field, std::size_t n, std::size_t i, std::size_t j);
    static Matrix diagonal(const Field& field, const Vector& entries);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, Scalar value) { entries_[i * cols_ + j] = std::move(value); }
    const std::vector<Scalar>& entries() const { return entries_; }

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(const Scalar& c) const;
    Vector apply(const Vector& v) const;
    Matrix transpose() const;

    bool is_zero() const;
    bool is_identity() const;
    bool is_diagonal() const;

    bool operator==(const Matrix& rhs) const = default;
    /// Lexicographic order on (rows, cols, entries); only meaningful within
    /// one field. Used for deterministic sorting of enumerated groups.
    bool lex_less(const Matrix& rhs) const;

    std::string to_string() const;

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> entries_;
};

Matrix power(const Matrix& m, std::uint64_t e);
Scalar determinant(const Matrix& m);
bool is_invertible(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// g * x * g^{-1}; throws InvalidArgument when g is singular.
Matrix conjugate(const Matrix& g, const Matrix& x);
Scalar trace(const Matrix& m);
/// Block-diagonal matrix diag(a, b).
Matrix direct_sum(const Matrix& a, const Matrix& b);

Scalar dot(const Field& field, const Vector& a, const Vector& b);
bool is_zero_vector(const Field& field, const Vector& v);
Vector standard_basis_vector(const Field& field, std::size_t n, std::size_t i);

/// Ordered generators h_1, ..., h_m of a subgroup of GL_n. All components
/// are square, of common dimension n, over a common field, and invertible.
class MatrixTuple {
public:
    MatrixTuple(Field field, std::size_t n, std::vector<Matrix> components);
    /// Field and dimension taken from the first component; at least one
    /// component required.
    explicit MatrixTuple(std::vector<Matrix> components);

    const Field& field() const { return field_; }
    std::size_t dimension() const { return n_; }
    std::size_t size() const { return components_.size(); }
    bool empty() const { return components_.empty(); }
    const Matrix& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<Matrix>& components() const { return components_; }
    auto begin() const { return components_.begin(); }
    auto end() const { return components_.end(); }

    /// Componentwise g h_i g^{-1}.
    MatrixTuple conjugated(const Matrix& g) const;

    bool operator==(const MatrixTuple&) const = default;

private:
    void validate() const;

    Field field_;
    std::size_t n_;
    std::vector<Matrix> components_;
};

}  // namespace gcr
