#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace murank {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Thrown by inverse()/division when the divisor is zero.
class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero") {}
};

/**
 * Arbitrary-precision rational number.
 *
 * Always stored in canonical form: reduced to lowest terms, denominator
 * positive, zero is 0/1. Canonical form is maintained by the underlying
 * boost::multiprecision::cpp_rational on every operation.
 */
class Rational {
public:
    Rational() : v_(0) {}
    Rational(std::int64_t n) : v_(n) {}  // NOLINT: implicit by design
    Rational(BigInt num, BigInt den) {
        if (den == 0) throw DivisionByZero{};
        if (den < 0) {
            num = -num;
            den = -den;
        }
        v_ = BigRational(std::move(num), std::move(den));
    }
    explicit Rational(BigRational v) : v_(std::move(v)) {}

    [[nodiscard]] BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    [[nodiscard]] BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    [[nodiscard]] bool is_zero() const { return v_.is_zero(); }
    [[nodiscard]] bool is_one() const { return v_ == 1; }
    [[nodiscard]] bool is_negative() const { return v_ < 0; }
    [[nodiscard]] bool is_integer() const { return denominator() == 1; }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw DivisionByZero{};
        return Rational(BigRational(1) / v_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZero{};
        return Rational(a.v_ / b.v_);
    }
    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    [[nodiscard]] double to_double() const { return v_.convert_to<double>(); }

    /// Renders "p" for integers, "p/q" otherwise.
    [[nodiscard]] std::string to_string() const {
        std::string s = numerator().str();
        if (!is_integer()) s += "/" + denominator().str();
        return s;
    }

    /// Parses "p" or "p/q" (optional leading '-'). Returns nullopt on bad syntax.
    static std::optional<Rational> parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        std::size_t i = 0;
        bool neg = false;
        if (text[i] == '-') { neg = true; ++i; }
        auto digits = [&](BigInt& out) -> bool {
            if (i >= text.size() || text[i] < '0' || text[i] > '9') return false;
            out = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                out = out * 10 + (text[i] - '0');
                ++i;
            }
            return true;
        };
        BigInt num;
        if (!digits(num)) return std::nullopt;
        BigInt den = 1;
        if (i < text.size() && text[i] == '/') {
            ++i;
            if (!digits(den)) return std::nullopt;
            if (den == 0) return std::nullopt;
        }
        if (i != text.size()) return std::nullopt;
        return Rational(neg ? -num : num, den);
    }

    /// Exact square root if this is a perfect square of a rational.
    [[nodiscard]] std::optional<Rational> sqrt_exact() const {
        auto [t, core] = sqrt_decompose();
        if (core == 1) return t;
        return std::nullopt;
    }

    /**
     * Decomposes this = t² · d with t a nonnegative rational and d a
     * squarefree integer (possibly negative; d = 1 iff perfect square).
     * For zero returns (0, 1).
     */
    [[nodiscard]] std::pair<Rational, BigInt> sqrt_decompose() const {
        if (is_zero()) return {Rational(0), BigInt(1)};
        // p/q = (p·q)/q², so sqrt(p/q) = sqrt(p·q)/q.
        BigInt n = numerator() * denominator();
        auto [m, d] = square_free_split(n);
        return {Rational(m, denominator()), d};
    }

    /// Splits n = m² · d with d squarefree (sign carried by d), m > 0.
    static std::pair<BigInt, BigInt> square_free_split(BigInt n) {
        if (n == 0) return {BigInt(0), BigInt(1)};
        const bool neg = n < 0;
        if (neg) n = -n;
        BigInt m = 1;
        for (BigInt f = 2; f <= 65536 && f * f <= n; ++f) {
            const BigInt ff = f * f;
            while (n % ff == 0) {
                n /= ff;
                m *= f;
            }
        }
        if (n > 1) {
            // remaining part may itself be a perfect square of a large prime
            const BigInt r = boost::multiprecision::sqrt(n);
            if (r * r == n) {
                m *= r;
                n = 1;
            }
        }
        return {m, neg ? -n : n};
    }

private:
    BigRational v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace murank
