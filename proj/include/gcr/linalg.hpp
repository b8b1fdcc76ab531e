#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gcr/matrix.hpp"

namespace gcr {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Reduced row-echelon form by Gauss-Jordan elimination.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

struct AffineSolution {
    Vector particular;          // free variables set to zero
    std::vector<Vector> kernel;  // one vector per free column, in column order
};

/// Solves A x = b. Returns nullopt when the system is inconsistent.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);

/// Basis of {x : A x = 0}, in free-column order.
std::vector<Vector> kernel_basis(const Matrix& a);

/// A subspace of k^n stored by its RREF basis, so equal subspaces have
/// equal representations.
class Subspace {
public:
    /// The zero subspace of k^n.
    Subspace(Field field, std::size_t ambient);
    /// Span of the given vectors (which may be dependent or zero).
    static Subspace span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace full(const Field& field, std::size_t ambient);

    const Field& field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    bool is_full() const { return basis_.size() == ambient_; }
    const std::vector<Vector>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /// Basis rows as a dim x ambient matrix.
    Matrix basis_matrix() const;

    /// v minus its projection along the pivot columns; zero iff v lies in
    /// the subspace.
    Vector reduce(const Vector& v) const;
    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    /// Image under a square matrix.
    Subspace image(const Matrix& m) const;
    /// Every generator maps the subspace into itself.
    bool is_stable(std::span<const Matrix> gens) const;

    bool operator==(const Subspace& other) const = default;

private:
    Field field_;
    std::size_t ambient_;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Rows spanning the annihilator {c : c . w = 0 for all w in W}; the rows
/// form a (n - dim W) x n matrix.
Matrix annihilator(const Subspace& w);

/// Incremental echelon basis used for span-membership tests while a
/// subspace grows. Not reduced, so cheaper than recomputing the RREF.
class EchelonBuilder {
public:
    EchelonBuilder(Field field, std::size_t ambient);

    /// Reduces v against the current basis; adds it and returns true when it
    /// is independent.
    bool add(const Vector& v);
    bool contains(const Vector& v) const;
    std::size_t dim() const { return rows_.size(); }
    Subspace subspace() const;

private:
    Vector reduce(Vector v) const;

    Field field_;
    std::size_t ambient_;
    std::vector<Vector> rows_;  // each normalised to 1 at its pivot
    std::vector<std::size_t> pivots_;
};

/// Smallest subspace containing every seed and stable under every
/// generator. Seeds and generators are processed in input order,
/// breadth-first. Throws InvalidArgument for an empty seed list.
Subspace spin(const Field& field, const std::vector<Vector>& seeds, std::span<const Matrix> gens);
Subspace spin(const std::vector<Vector>& seeds, const MatrixTuple& gens);

/// Basis of the commutant {A : A h = h A for every generator}, canonicalised
/// as the RREF of the flattened solutions.
std::vector<Matrix> commutant(std::span<const Matrix> gens, const Field& field, std::size_t n);
std::vector<Matrix> commutant(const MatrixTuple& gens);

/// The subquotient U/W of a module (W <= U both generator-stable): a fixed
/// basis of U modulo W, coordinates in that basis, lifting, and the induced
/// action matrices.
class Section {
public:
    Section(const Subspace& upper, const Subspace& lower);

    std::size_t dim() const { return basis_.size(); }
    const Subspace& upper() const { return upper_; }
    const Subspace& lower() const { return lower_; }

    /// Coordinates of u + W for u in U.
    Vector coordinates(const Vector& u) const;
    /// A representative in U of the class with the given coordinates.
    Vector lift(const Vector& coords) const;
    /// W + lift(S) for a subspace S of the section.
    Subspace lift(const Subspace& s) const;
    /// Matrix of the action induced by h on U/W.
    Matrix action(const Matrix& h) const;
    std::vector<Matrix> action(std::span<const Matrix> gens) const;

private:
    Subspace upper_;
    Subspace lower_;
    std::vector<Vector> basis_;  // RREF rows, reduced modulo lower_
    std::vector<std::size_t> pivots_;
};

/// Vector <-> flattened matrix helpers (row-major).
Vector flatten(const Matrix& m);
Matrix unflatten(const Field& field, std::size_t rows, std::size_t cols, const Vector& v);

}  // namespace gcr
