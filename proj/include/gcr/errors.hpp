#pragma once

#include <stdexcept>
#include <string>

namespace gcr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition (dimension mismatch, non-prime
/// modulus, singular generator, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An exhaustive search would exceed the configured enumeration budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

#define GCR_ASSERT(cond, msg)                                                  \
    do {                                                                       \
        if (!(cond)) {                                                         \
            throw ::gcr::InternalError(std::string("assertion failed: ") +     \
                                       (msg));                                 \
        }                                                                      \
    } while (0)

}  // namespace gcr
