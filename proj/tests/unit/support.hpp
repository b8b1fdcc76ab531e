#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gcr/gcr.hpp"

namespace gcr::testing {

inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix m(f, rows, cols);
    std::uniform_int_distribution<std::int64_t> small(-3, 3);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (f.is_finite()) {
                m.set(i, j, f.element(rng() % *f.order()));
            } else {
                m.set(i, j, f.from_int(small(rng)));
            }
        }
    }
    return m;
}

inline Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Matrix m = random_matrix(f, n, n, rng);
        if (is_invertible(m)) return m;
    }
}

inline MatrixTuple random_tuple(const Field& f, std::size_t n, std::size_t count, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_invertible(f, n, rng));
    return MatrixTuple(f, n, std::move(out));
}

/// Random element of P_lambda (entry pattern in diagonal coordinates).
inline Matrix random_parabolic_element(const Field& f, const std::vector<std::int64_t>& e, std::mt19937_64& rng) {
    const std::size_t n = e.size();
    while (true) {
        Matrix m = random_matrix(f, n, n, rng);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (e[i] < e[j]) m.set(i, j, f.zero());
            }
        }
        if (is_invertible(m)) return m;
    }
}

/// Random unipotent matrix g (I + strictly upper) g^{-1}.
inline Matrix random_unipotent(const Field& f, std::size_t n, const Matrix& g, std::mt19937_64& rng) {
    Matrix m = random_matrix(f, n, n, rng);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) m.set(i, j, i == j ? f.one() : f.zero());
    }
    return conjugate(g, m);
}

}  // namespace gcr::testing
