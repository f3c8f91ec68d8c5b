#pragma once

#include "murank/rational.hpp"

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace murank {

/**
 * Element of ℚ with adjoined square roots.
 *
 * Each adjoined symbol is the square root of a squarefree integer (its
 * defining value, possibly negative: sqrt(-1) is the imaginary unit).
 * Defining values are canonicalized on adjunction, so sqrt(8) is stored
 * as 2·sqrt(2) and equal defining values always share one symbol; the
 * product of two equal symbols reduces to the defining value, while
 * products of distinct symbols stay as formal monomials.
 *
 * An element is a ℚ-linear combination of squarefree monomials in the
 * adjoined symbols (coords keyed by the subset of symbols). It is zero
 * iff every coordinate is zero. When a defining value is a square the
 * algebra can have zero divisors; inversion is therefore only supported
 * for rational elements.
 */
class QuadExt {
public:
    using Mask = std::uint32_t;

    QuadExt() = default;
    QuadExt(std::int64_t n) { set_rational(Rational(n)); }  // NOLINT: implicit by design
    QuadExt(Rational r) { set_rational(std::move(r)) ; }    // NOLINT: implicit by design

    static QuadExt zero() { return QuadExt{}; }
    static QuadExt one() { return QuadExt{1}; }
    static QuadExt from_int(std::int64_t n) { return QuadExt{n}; }
    static QuadExt from_rational(Rational r) { return QuadExt{std::move(r)}; }

    /// The square root of an integer as an element: symbol(8) = 2·sqrt(2).
    static QuadExt symbol(const BigInt& defining_value) {
        auto [m, core] = Rational::square_free_split(defining_value);
        QuadExt e;
        if (m == 0) return e;
        if (core == 1) {
            e.set_rational(Rational(m, 1));
            return e;
        }
        e.cores_.push_back(core);
        e.coords_[Mask{1}] = Rational(m, 1);
        return e;
    }

    /// Defining values of the symbols this element actually uses.
    [[nodiscard]] const std::vector<BigInt>& cores() const { return cores_; }

    [[nodiscard]] bool is_zero() const { return coords_.empty(); }
    [[nodiscard]] bool is_rational() const {
        return coords_.empty() || (coords_.size() == 1 && coords_.begin()->first == 0);
    }
    [[nodiscard]] Rational rational_part() const {
        auto it = coords_.find(Mask{0});
        return it == coords_.end() ? Rational(0) : it->second;
    }
    [[nodiscard]] Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("QuadExt: element is not rational");
        return rational_part();
    }
    /// Coordinate of a symbol subset, identified by its sorted defining values.
    [[nodiscard]] Rational coord(const std::vector<BigInt>& monomial_cores) const {
        Mask m = 0;
        for (const auto& c : monomial_cores) {
            auto idx = core_index(c);
            if (idx < 0) return Rational(0);
            m |= Mask{1} << idx;
        }
        auto it = coords_.find(m);
        return it == coords_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] QuadExt inverse() const {
        if (is_zero()) throw DivisionByZero{};
        if (!is_rational())
            throw std::domain_error("QuadExt: inversion of a non-rational extension element is unsupported");
        return QuadExt{rational_part().inverse()};
    }

    friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
        QuadExt r;
        std::vector<int> ma, mb;
        merge_cores(a, b, r.cores_, ma, mb);
        for (const auto& [mask, c] : a.coords_) r.coords_[remap(mask, ma)] += c;
        for (const auto& [mask, c] : b.coords_) r.coords_[remap(mask, mb)] += c;
        r.normalize();
        return r;
    }
    friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return a + (-b); }
    friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
        QuadExt r;
        std::vector<int> ma, mb;
        merge_cores(a, b, r.cores_, ma, mb);
        for (const auto& [m1, c1] : a.coords_) {
            const Mask r1 = remap(m1, ma);
            for (const auto& [m2, c2] : b.coords_) {
                const Mask r2 = remap(m2, mb);
                Rational c = c1 * c2;
                Mask common = r1 & r2;
                for (int i = 0; common != 0; ++i, common >>= 1)
                    if (common & 1) c *= Rational(r.cores_[static_cast<std::size_t>(i)], 1);
                r.coords_[r1 ^ r2] += c;
            }
        }
        r.normalize();
        return r;
    }
    QuadExt operator-() const {
        QuadExt r = *this;
        for (auto& [mask, c] : r.coords_) c = -c;
        return r;
    }
    QuadExt& operator+=(const QuadExt& o) { *this = *this + o; return *this; }
    QuadExt& operator-=(const QuadExt& o) { *this = *this - o; return *this; }
    QuadExt& operator*=(const QuadExt& o) { *this = *this * o; return *this; }

    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.cores_ == b.cores_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

    /**
     * Negates every coordinate whose monomial contains the symbol with the
     * given defining value: the involutive ring automorphism sending that
     * symbol to its negative. Throws if the symbol is not adjoined here.
     */
    [[nodiscard]] QuadExt sign_flip(const BigInt& core) const {
        const int idx = core_index(core);
        if (idx < 0)
            throw std::invalid_argument("QuadExt::sign_flip: unknown symbol sqrt(" + core.str() + ")");
        QuadExt r = *this;
        const Mask bit = Mask{1} << idx;
        for (auto& [mask, c] : r.coords_)
            if (mask & bit) c = -c;
        return r;
    }

    [[nodiscard]] std::string to_string() const {
        if (coords_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [mask, c] : coords_) {
            const bool neg = c.is_negative();
            const Rational mag = neg ? -c : c;
            std::string term;
            if (mask == 0) {
                term = mag.to_string();
            } else {
                std::string mono;
                for (int i = 0; i < static_cast<int>(cores_.size()); ++i)
                    if (mask & (Mask{1} << i)) {
                        if (!mono.empty()) mono += "*";
                        mono += "sqrt(" + cores_[static_cast<std::size_t>(i)].str() + ")";
                    }
                term = mag.is_one() ? mono : mag.to_string() + "*" + mono;
            }
            if (first) {
                out = neg ? "-" + term : term;
                first = false;
            } else {
                out += (neg ? " - " : " + ") + term;
            }
        }
        return out;
    }

    /// Iteration support for serialization: (sorted defining values, mask -> coeff).
    [[nodiscard]] const std::map<Mask, Rational>& coords() const { return coords_; }

private:
    std::vector<BigInt> cores_;        // sorted ascending, distinct, squarefree, != 0, 1
    std::map<Mask, Rational> coords_;  // nonzero coefficients only

    void set_rational(Rational r) {
        cores_.clear();
        coords_.clear();
        if (!r.is_zero()) coords_[Mask{0}] = std::move(r);
    }

    [[nodiscard]] int core_index(const BigInt& core) const {
        for (std::size_t i = 0; i < cores_.size(); ++i)
            if (cores_[i] == core) return static_cast<int>(i);
        return -1;
    }

    static Mask remap(Mask mask, const std::vector<int>& to) {
        Mask r = 0;
        for (int i = 0; mask != 0; ++i, mask >>= 1)
            if (mask & 1) r |= Mask{1} << to[static_cast<std::size_t>(i)];
        return r;
    }

    static void merge_cores(const QuadExt& a, const QuadExt& b, std::vector<BigInt>& cores,
                            std::vector<int>& map_a, std::vector<int>& map_b) {
        cores.clear();
        std::size_t i = 0, j = 0;
        map_a.assign(a.cores_.size(), 0);
        map_b.assign(b.cores_.size(), 0);
        while (i < a.cores_.size() || j < b.cores_.size()) {
            if (j >= b.cores_.size() || (i < a.cores_.size() && a.cores_[i] < b.cores_[j])) {
                map_a[i++] = static_cast<int>(cores.size());
                cores.push_back(a.cores_[i - 1]);
            } else if (i >= a.cores_.size() || b.cores_[j] < a.cores_[i]) {
                map_b[j++] = static_cast<int>(cores.size());
                cores.push_back(b.cores_[j - 1]);
            } else {
                map_a[i++] = static_cast<int>(cores.size());
                map_b[j++] = static_cast<int>(cores.size());
                cores.push_back(a.cores_[i - 1]);
            }
        }
    }

    void normalize() {
        for (auto it = coords_.begin(); it != coords_.end();)
            it = it->second.is_zero() ? coords_.erase(it) : std::next(it);
        Mask used = 0;
        for (const auto& [mask, c] : coords_) used |= mask;
        const Mask full = cores_.empty() ? Mask{0} : (Mask{1} << cores_.size()) - 1;
        if (used == full) return;
        // compress away unused cores
        std::vector<BigInt> kept;
        std::vector<int> to(cores_.size(), -1);
        for (std::size_t i = 0; i < cores_.size(); ++i)
            if (used & (Mask{1} << i)) {
                to[i] = static_cast<int>(kept.size());
                kept.push_back(cores_[i]);
            }
        std::map<Mask, Rational> remapped;
        for (const auto& [mask, c] : coords_) {
            Mask m = 0;
            for (int i = 0; (mask >> i) != 0; ++i)
                if (mask & (Mask{1} << i)) m |= Mask{1} << to[static_cast<std::size_t>(i)];
            remapped[m] = c;
        }
        cores_ = std::move(kept);
        coords_ = std::move(remapped);
    }
};

/// Both square roots of a rational element; {0} for zero; adjoins a symbol
/// when the root is irrational. Square roots of non-rational extension
/// elements are unsupported.
inline std::vector<QuadExt> sqrt_candidates(const QuadExt& s) {
    if (s.is_zero()) return {QuadExt{}};
    if (!s.is_rational())
        throw std::domain_error("QuadExt: square root of a non-rational extension element is unsupported");
    const Rational r = s.as_rational();
    auto [t, core] = r.sqrt_decompose();
    if (core == 1) return {QuadExt{t}, QuadExt{-t}};
    const QuadExt root = QuadExt::symbol(core) * QuadExt{t};
    return {root, -root};
}

inline QuadExt sign_flip(const QuadExt& e, const BigInt& core) { return e.sign_flip(core); }

inline std::ostream& operator<<(std::ostream& os, const QuadExt& e) { return os << e.to_string(); }

}  // namespace murank
