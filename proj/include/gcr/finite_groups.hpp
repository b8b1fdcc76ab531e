#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "gcr/matrix.hpp"

namespace gcr {

/// Enumeration caps and worker count shared by every exhaustive search.
struct SearchOptions {
    std::uint64_t budget = std::uint64_t{1} << 22;
    unsigned threads = 1;
};

/// Residues of a matrix over F_p in row-major order; a total order key.
using MatrixKey = std::vector<std::uint32_t>;
MatrixKey key_of(const Matrix& m);
MatrixKey key_of(const MatrixTuple& h);

/// Throws InvalidArgument unless the field is finite.
void require_finite(const Field& field, const char* what);

/// q^e as an exact count, saturating at UINT64_MAX.
std::uint64_t saturating_power(std::uint64_t q, std::uint64_t e);

/// The index-th vector of F_q^n in lexicographic order (first coordinate
/// most significant).
Vector vector_at(const Field& field, std::size_t n, std::uint64_t index);

/// All of GL_n(F_q), in lexicographic order of row-major entries. Throws
/// BudgetExceeded when q^{n^2} exceeds the budget.
std::vector<Matrix> enumerate_general_linear(const Field& field, std::size_t n, const SearchOptions& options);

/// Elements of the group generated by the tuple, sorted by key. Throws
/// BudgetExceeded when the group order exceeds the budget.
std::vector<Matrix> group_closure(const MatrixTuple& h, const SearchOptions& options);
std::set<MatrixKey> group_closure_keys(const MatrixTuple& h, const SearchOptions& options);

/// Smallest index i in [0, count) with pred(i), or nullopt. With several
/// threads the indices are interleaved across workers and every worker stops
/// once a smaller hit is known, so the answer equals the sequential one.
std::optional<std::uint64_t> find_first(std::uint64_t count, unsigned threads,
                                        const std::function<bool(std::uint64_t)>& pred);

/// The first g in the GL_n(F_q) enumeration with g a_i g^{-1} = b_i for every
/// component, or nullopt when the tuples are not conjugate.
std::optional<Matrix> find_conjugator_exhaustive(const MatrixTuple& a, const MatrixTuple& b,
                                                 const SearchOptions& options);

/// The GL_n(F_q)-orbit of the tuple under simultaneous conjugation, as keys.
/// The group elements are passed in so callers can reuse one enumeration.
std::set<MatrixKey> conjugacy_orbit(const MatrixTuple& h, const std::vector<Matrix>& group);

}  // namespace gcr
