#include "gcr/finite_groups.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>

namespace gcr {

MatrixKey key_of(const Matrix& m) {
    MatrixKey key;
    key.reserve(m.entries().size());
    for (const Scalar& s : m.entries()) key.push_back(s.residue());
    return key;
}

MatrixKey key_of(const MatrixTuple& h) {
    MatrixKey key;
    for (const Matrix& m : h) {
        for (const Scalar& s : m.entries()) key.push_back(s.residue());
    }
    return key;
}

void require_finite(const Field& field, const char* what) {
    if (!field.is_finite()) throw InvalidArgument(std::string(what) + " requires a finite base field");
}

std::uint64_t saturating_power(std::uint64_t q, std::uint64_t e) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (q != 0 && out > std::numeric_limits<std::uint64_t>::max() / q) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out *= q;
    }
    return out;
}

Vector vector_at(const Field& field, std::size_t n, std::uint64_t index) {
    const std::uint64_t q = *field.order();
    Vector v(n, field.zero());
    for (std::size_t i = n; i-- > 0;) {
        v[i] = field.element(index % q);
        index /= q;
    }
    return v;
}

std::vector<Matrix> enumerate_general_linear(const Field& field, std::size_t n, const SearchOptions& options) {
    require_finite(field, "GL_n enumeration");
    const std::uint64_t q = *field.order();
    const std::uint64_t total = saturating_power(q, n * n);
    if (total > options.budget) {
        throw BudgetExceeded("enumerating GL_" + std::to_string(n) + "(F_" + std::to_string(q) +
                             ") needs " + std::to_string(total) + " candidates, budget " +
                             std::to_string(options.budget));
    }
    std::vector<Matrix> out;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vector flat = vector_at(field, n * n, idx);
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n * n; ++i) m.set(i / n, i % n, flat[i]);
        if (is_invertible(m)) out.push_back(std::move(m));
    }
    return out;
}

std::set<MatrixKey> group_closure_keys(const MatrixTuple& h, const SearchOptions& options) {
    std::set<MatrixKey> seen;
    for (const Matrix& m : group_closure(h, options)) seen.insert(key_of(m));
    return seen;
}

std::vector<Matrix> group_closure(const MatrixTuple& h, const SearchOptions& options) {
    require_finite(h.field(), "group closure");
    const Matrix id = Matrix::identity(h.field(), h.dimension());
    std::set<MatrixKey> seen{key_of(id)};
    std::vector<Matrix> elements{id};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const Matrix current = elements[queue.front()];
        queue.pop_front();
        for (const Matrix& g : h) {
            Matrix next = current * g;
            if (seen.insert(key_of(next)).second) {
                if (elements.size() >= options.budget) {
                    throw BudgetExceeded("group order exceeds budget " + std::to_string(options.budget));
                }
                elements.push_back(std::move(next));
                queue.push_back(elements.size() - 1);
            }
        }
    }
    std::sort(elements.begin(), elements.end(), [](const Matrix& a, const Matrix& b) { return a.lex_less(b); });
    return elements;
}

std::optional<std::uint64_t> find_first(std::uint64_t count, unsigned threads,
                                        const std::function<bool(std::uint64_t)>& pred) {
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) {
            if (pred(i)) return i;
        }
        return std::nullopt;
    }
    const std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> best{none};
    std::mutex error_mutex;
    std::exception_ptr error;
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::uint64_t i = t; i < count && i < best.load(std::memory_order_relaxed); i += threads) {
                        if (pred(i)) {
                            std::uint64_t cur = best.load();
                            while (i < cur && !best.compare_exchange_weak(cur, i)) {
                            }
                            return;
                        }
                    }
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
    if (best.load() == none) return std::nullopt;
    return best.load();
}

std::optional<Matrix> find_conjugator_exhaustive(const MatrixTuple& a, const MatrixTuple& b,
                                                 const SearchOptions& options) {
    if (a.field() != b.field() || a.dimension() != b.dimension() || a.size() != b.size()) {
        throw InvalidArgument("tuples have different shapes");
    }
    const std::vector<Matrix> group = enumerate_general_linear(a.field(), a.dimension(), options);
    auto hit = find_first(group.size(), options.threads, [&](std::uint64_t idx) {
        const Matrix& g = group[idx];
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (g * a[k] != b[k] * g) return false;
        }
        return true;
    });
    if (!hit) return std::nullopt;
    return group[*hit];
}

std::set<MatrixKey> conjugacy_orbit(const MatrixTuple& h, const std::vector<Matrix>& group) {
    std::set<MatrixKey> orbit;
    for (const Matrix& g : group) orbit.insert(key_of(h.conjugated(g)));
    return orbit;
}

}  // namespace gcr
