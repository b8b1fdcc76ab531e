#include "gcr/field.hpp"

#include <charconv>
#include <limits>
#include <utility>

namespace gcr {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31)) throw InvalidArgument("modulus too large (p must be < 2^31)");
    if (!is_prime(p)) throw InvalidArgument("modulus not prime");
    return Field(Kind::prime_field, static_cast<std::uint32_t>(p));
}

std::optional<std::uint64_t> Field::order() const {
    if (kind_ == Kind::rationals) return std::nullopt;
    return p_;
}

Scalar Field::zero() const {
    return kind_ == Kind::rationals ? Scalar::from_rational(Rational(0)) : Scalar::from_residue(0);
}

Scalar Field::one() const {
    return kind_ == Kind::rationals ? Scalar::from_rational(Rational(1)) : Scalar::from_residue(1);
}

Scalar Field::from_int(std::int64_t v) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(Rational(v));
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Scalar::from_residue(static_cast<std::uint32_t>(r));
}

Scalar Field::from_bigint(const BigInt& v) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(Rational(v));
    BigInt r = v % p_;
    if (r < 0) r += p_;
    return Scalar::from_residue(r.convert_to<std::uint32_t>());
}

Scalar Field::from_rational(const Rational& q) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(q);
    Scalar den = from_bigint(boost::multiprecision::denominator(q));
    if (is_zero(den)) throw InvalidArgument("denominator vanishes in " + describe());
    return div(from_bigint(boost::multiprecision::numerator(q)), den);
}

Scalar Field::element(std::uint64_t index) const {
    if (kind_ != Kind::prime_field || index >= p_) {
        throw InvalidArgument("element index out of range");
    }
    return Scalar::from_residue(static_cast<std::uint32_t>(index));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(a.rational() + b.rational());
    std::uint64_t s = std::uint64_t{a.residue()} + b.residue();
    if (s >= p_) s -= p_;
    return Scalar::from_residue(static_cast<std::uint32_t>(s));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(a.rational() - b.rational());
    std::uint64_t s = std::uint64_t{a.residue()} + p_ - b.residue();
    if (s >= p_) s -= p_;
    return Scalar::from_residue(static_cast<std::uint32_t>(s));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(a.rational() * b.rational());
    return Scalar::from_residue(
        static_cast<std::uint32_t>(std::uint64_t{a.residue()} * b.residue() % p_));
}

Scalar Field::neg(const Scalar& a) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(-a.rational());
    return Scalar::from_residue(a.residue() == 0 ? 0 : p_ - a.residue());
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw InvalidArgument("division by zero");
    if (kind_ == Kind::rationals) return Scalar::from_rational(1 / a.rational());
    // Extended Euclid on (a, p).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a.residue();
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += p_;
    return Scalar::from_residue(static_cast<std::uint32_t>(t));
}

bool Field::is_zero(const Scalar& a) const {
    if (a.is_residue()) return a.residue() == 0;
    return a.rational() == 0;
}

bool Field::is_one(const Scalar& a) const {
    if (a.is_residue()) return a.residue() == 1;
    return a.rational() == 1;
}

Rational parse_rational(std::string_view text) {
    auto parse_int = [](std::string_view s) -> BigInt {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start) throw InvalidArgument("malformed number literal");
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw InvalidArgument("malformed number literal");
        }
        return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        throw InvalidArgument("malformed number literal");
    }
    BigInt den = parse_int(den_text);
    if (den == 0) throw InvalidArgument("zero denominator");
    return Rational(num, den);
}

std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Scalar Field::parse(std::string_view text) const {
    if (kind_ == Kind::rationals) return Scalar::from_rational(parse_rational(text));
    if (text.empty()) throw InvalidArgument("malformed field element");
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("malformed field element \"" + std::string(text) + "\"");
    }
    return Scalar::from_residue(static_cast<std::uint32_t>(value % p_));
}

std::string Field::format(const Scalar& a) const {
    if (kind_ == Kind::rationals) return to_string(a.rational());
    return std::to_string(a.residue());
}

std::string Field::describe() const {
    if (kind_ == Kind::rationals) return "Q";
    return "F_" + std::to_string(p_);
}

}  // namespace gcr
