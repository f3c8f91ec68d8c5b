#pragma once

#include "murank/rational.hpp"

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace murank {

/**
 * Complex double-precision scalar with a running magnitude estimate.
 *
 * Every value carries `scale`: the largest magnitude among the monomials
 * merged into it (additions keep the max of the operands' scales,
 * multiplications multiply them). A value counts as zero when
 * |v| <= tolerance · max(1, scale), so the zero test stays meaningful after
 * the large cancellations the determinant formulas produce.
 *
 * Non-finite values are rejected: any operation producing NaN/Inf throws.
 */
class ComplexF {
public:
    ComplexF() = default;
    ComplexF(std::int64_t n) : v_(static_cast<double>(n), 0.0), scale_(std::abs(static_cast<double>(n))) {}  // NOLINT
    ComplexF(double re, double im = 0.0) : v_(re, im), scale_(std::abs(v_)) { check(v_); }
    explicit ComplexF(std::complex<double> v) : v_(v), scale_(std::abs(v)) { check(v_); }

    static ComplexF zero() { return ComplexF{}; }
    static ComplexF one() { return ComplexF{std::int64_t{1}}; }
    static ComplexF from_int(std::int64_t n) { return ComplexF{n}; }
    static ComplexF from_rational(const Rational& r) { return ComplexF{r.to_double()}; }

    /// Relative comparison tolerance used by every zero test (default 1e-9).
    static double& tolerance() {
        static double tol = 1e-9;
        return tol;
    }

    [[nodiscard]] std::complex<double> value() const { return v_; }
    [[nodiscard]] double re() const { return v_.real(); }
    [[nodiscard]] double im() const { return v_.imag(); }
    [[nodiscard]] double scale() const { return scale_; }

    [[nodiscard]] bool is_zero() const {
        return std::abs(v_) <= tolerance() * std::max(1.0, scale_);
    }

    [[nodiscard]] ComplexF inverse() const {
        if (is_zero()) throw DivisionByZero{};
        ComplexF r;
        r.v_ = 1.0 / v_;
        check(r.v_);
        const double av = std::abs(v_);
        r.scale_ = std::max(std::abs(r.v_), scale_ / (av * av));
        return r;
    }

    friend ComplexF operator+(const ComplexF& a, const ComplexF& b) {
        ComplexF r;
        r.v_ = a.v_ + b.v_;
        check(r.v_);
        r.scale_ = std::max({a.scale_, b.scale_, std::abs(r.v_)});
        return r;
    }
    friend ComplexF operator-(const ComplexF& a, const ComplexF& b) { return a + (-b); }
    friend ComplexF operator*(const ComplexF& a, const ComplexF& b) {
        ComplexF r;
        r.v_ = a.v_ * b.v_;
        check(r.v_);
        r.scale_ = std::max(a.scale_ * b.scale_, std::abs(r.v_));
        return r;
    }
    ComplexF operator-() const {
        ComplexF r = *this;
        r.v_ = -r.v_;
        return r;
    }
    ComplexF& operator+=(const ComplexF& o) { *this = *this + o; return *this; }
    ComplexF& operator-=(const ComplexF& o) { *this = *this - o; return *this; }
    ComplexF& operator*=(const ComplexF& o) { *this = *this * o; return *this; }

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        os.precision(12);
        os << v_.real();
        if (v_.imag() != 0.0) os << (v_.imag() < 0 ? " - " : " + ") << std::abs(v_.imag()) << "i";
        return os.str();
    }

private:
    std::complex<double> v_{0.0, 0.0};
    double scale_ = 0.0;

    static void check(const std::complex<double>& v) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("ComplexF: non-finite value");
    }

    friend std::vector<ComplexF> sqrt_candidates(const ComplexF&);
};

/// Principal square root and its negative; {0} for (tolerance-)zero input.
inline std::vector<ComplexF> sqrt_candidates(const ComplexF& s) {
    if (s.is_zero()) return {ComplexF{}};
    ComplexF r;
    r.v_ = std::sqrt(s.v_);
    r.scale_ = std::max(std::abs(r.v_), std::sqrt(s.scale_));
    return {r, -r};
}

inline std::ostream& operator<<(std::ostream& os, const ComplexF& c) { return os << c.to_string(); }

}  // namespace murank
