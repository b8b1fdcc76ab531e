#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcr/errors.hpp"

namespace gcr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A field element. The representation is either a residue in [0, p) or a
/// rational in lowest terms; which one is meaningful is decided by the Field
/// the element belongs to. Elements produced by Field operations are always
/// canonical, so equality of values is equality of field elements.
class Scalar {
public:
    Scalar() : value_(std::uint32_t{0}) {}

    static Scalar from_residue(std::uint32_t r) { return Scalar(r); }
    static Scalar from_rational(Rational q) { return Scalar(std::move(q)); }

    bool is_residue() const { return std::holds_alternative<std::uint32_t>(value_); }
    std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
    const Rational& rational() const { return std::get<Rational>(value_); }

    bool operator==(const Scalar&) const = default;

private:
    explicit Scalar(std::uint32_t r) : value_(r) {}
    explicit Scalar(Rational q) : value_(std::move(q)) {}

    std::variant<std::uint32_t, Rational> value_;
};

bool is_prime(std::uint64_t n);

/// The base field: either Q or F_p with p prime and p < 2^31.
class Field {
public:
    enum class Kind { rationals, prime_field };

    static Field rationals() { return Field(Kind::rationals, 0); }
    /// Throws InvalidArgument("modulus not prime") for composite p and for
    /// p >= 2^31.
    static Field prime(std::uint64_t p);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::prime_field; }
    /// p for F_p, 0 for Q.
    std::uint32_t characteristic() const { return p_; }
    /// Number of elements, absent for Q.
    std::optional<std::uint64_t> order() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t v) const;
    Scalar from_bigint(const BigInt& v) const;
    /// Throws InvalidArgument when the denominator vanishes in F_p.
    Scalar from_rational(const Rational& q) const;
    /// The index-th element in the enumeration order 0, 1, ..., p-1. Only
    /// defined for finite fields.
    Scalar element(std::uint64_t index) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    /// Throws InvalidArgument on zero.
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;

    /// Literal syntax: "a/b" or "a" for Q; a non-negative decimal for F_p,
    /// reduced mod p.
    Scalar parse(std::string_view text) const;
    std::string format(const Scalar& a) const;
    std::string describe() const;

    bool operator==(const Field&) const = default;

private:
    Field(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

    Kind kind_;
    std::uint32_t p_;
};

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

}  // namespace gcr
