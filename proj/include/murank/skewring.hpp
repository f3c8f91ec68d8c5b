#pragma once

#include "murank/scalar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace murank {

/// Thrown when μ parameters violate μ_ii = 1, μ_ij·μ_ji = 1 or μ_ij ≠ 0.
class MuInvariantViolation : public std::runtime_error {
public:
    explicit MuInvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

inline void require_dim(int a, int b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

/**
 * The multiplier matrix (μ_ij) defining the skew polynomial ring
 *   S = k<z_1..z_n> / (z_j z_i - μ_ij z_i z_j).
 * Entries are nonzero with μ_ii = 1 and μ_ij·μ_ji = 1.
 */
template <Scalar S>
class MuParams {
public:
    explicit MuParams(int n) : n_(n), m_(static_cast<std::size_t>(n * n), S::zero()) {
        if (n < 2) throw std::invalid_argument("MuParams: need at least two generators");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) at(i, j) = (i == j) ? S::one() : S::zero();
    }

    /// All-ones μ: the commutative polynomial ring.
    static MuParams commutative(int n) {
        MuParams p(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p.at(i, j) = S::one();
        return p;
    }

    /// Builds from strict-upper-triangle values; fills μ_ji = μ_ij⁻¹ and μ_ii = 1.
    static MuParams from_upper(int n, const std::map<std::pair<int, int>, S>& upper) {
        MuParams p = commutative(n);
        for (const auto& [ij, v] : upper) {
            auto [i, j] = ij;
            if (!(0 <= i && i < j && j < n))
                throw std::invalid_argument("MuParams::from_upper: bad index pair");
            if (v.is_zero()) throw MuInvariantViolation("mu entries must be nonzero");
            p.at(i, j) = v;
            p.at(j, i) = v.inverse();
        }
        return p;
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const S& mu(int i, int j) const { return at(i, j); }
    [[nodiscard]] S& at(int i, int j) { return m_[static_cast<std::size_t>(i * n_ + j)]; }
    [[nodiscard]] const S& at(int i, int j) const { return m_[static_cast<std::size_t>(i * n_ + j)]; }

    /// Checks μ_ii = 1, μ_ij·μ_ji = 1 and nonzero entries; throws on violation.
    void validate() const {
        for (int i = 0; i < n_; ++i) {
            if (!scalar_eq(at(i, i), S::one()))
                throw MuInvariantViolation("mu_" + idx(i, i) + " must be 1");
            for (int j = 0; j < n_; ++j) {
                if (at(i, j).is_zero())
                    throw MuInvariantViolation("mu_" + idx(i, j) + " must be nonzero");
                if (i != j && !scalar_eq(at(i, j) * at(j, i), S::one()))
                    throw MuInvariantViolation("mu_" + idx(i, j) + "*mu_" + idx(j, i) + " must be 1");
            }
        }
    }

private:
    int n_;
    std::vector<S> m_;

    static std::string idx(int i, int j) {
        return std::to_string(i + 1) + std::to_string(j + 1);
    }
};

/// Homogeneous degree-1 element of S: coefficients of z_1..z_n.
template <Scalar S>
class LinearForm {
public:
    explicit LinearForm(int n) : c_(static_cast<std::size_t>(n), S::zero()) {}
    explicit LinearForm(std::vector<S> coeffs) : c_(std::move(coeffs)) {}

    [[nodiscard]] int n() const { return static_cast<int>(c_.size()); }
    [[nodiscard]] const S& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    S& coeff(int i) { return c_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] const std::vector<S>& coeffs() const { return c_; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
        require_dim(a.n(), b.n(), "LinearForm::+");
        LinearForm r(a.n());
        for (int i = 0; i < a.n(); ++i) r.coeff(i) = a.coeff(i) + b.coeff(i);
        return r;
    }
    friend LinearForm operator*(const S& s, const LinearForm& l) {
        LinearForm r(l.n());
        for (int i = 0; i < l.n(); ++i) r.coeff(i) = s * l.coeff(i);
        return r;
    }

private:
    std::vector<S> c_;
};

/**
 * Homogeneous degree-2 element of S in normal form: only monomials
 * z_i z_j with i <= j are stored (c_ii on the diagonal, c_ij above it).
 */
template <Scalar S>
class QuadraticForm {
public:
    explicit QuadraticForm(int n)
        : n_(n),
          diag_(static_cast<std::size_t>(n), S::zero()),
          upper_(static_cast<std::size_t>(n * (n - 1) / 2), S::zero()) {}

    [[nodiscard]] static QuadraticForm zero(int n) { return QuadraticForm(n); }

    [[nodiscard]] int n() const { return n_; }

    /// Normal-form coefficient of z_i z_j (0-based, i <= j required).
    [[nodiscard]] const S& coeff(int i, int j) const {
        return i == j ? diag_[static_cast<std::size_t>(i)] : upper_[upper_index(i, j)];
    }
    S& coeff(int i, int j) {
        return i == j ? diag_[static_cast<std::size_t>(i)] : upper_[upper_index(i, j)];
    }

    [[nodiscard]] bool is_zero() const {
        for (const auto& c : diag_)
            if (!c.is_zero()) return false;
        for (const auto& c : upper_)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    int n_;
    std::vector<S> diag_;
    std::vector<S> upper_;

    [[nodiscard]] std::size_t upper_index(int i, int j) const {
        if (!(0 <= i && i < j && j < n_))
            throw std::invalid_argument("QuadraticForm: bad coefficient index");
        return static_cast<std::size_t>(i * n_ - i * (i + 1) / 2 + (j - i - 1));
    }
};

/**
 * Product of two linear forms, normal-ordered with z_j z_i = μ_ij z_i z_j:
 * diagonal c_ii = α_i β_i and c_ij = α_i β_j + μ_ij α_j β_i for i < j.
 */
template <Scalar S>
QuadraticForm<S> multiply_linear(const LinearForm<S>& l1, const LinearForm<S>& l2,
                                 const MuParams<S>& mu) {
    require_dim(l1.n(), l2.n(), "multiply_linear");
    require_dim(l1.n(), mu.n(), "multiply_linear");
    const int n = l1.n();
    QuadraticForm<S> q(n);
    for (int i = 0; i < n; ++i) {
        q.coeff(i, i) = l1.coeff(i) * l2.coeff(i);
        for (int j = i + 1; j < n; ++j)
            q.coeff(i, j) = l1.coeff(i) * l2.coeff(j) + mu.mu(i, j) * (l1.coeff(j) * l2.coeff(i));
    }
    return q;
}

template <Scalar S>
QuadraticForm<S> add(const QuadraticForm<S>& a, const QuadraticForm<S>& b) {
    require_dim(a.n(), b.n(), "add");
    QuadraticForm<S> r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = i; j < a.n(); ++j) r.coeff(i, j) = a.coeff(i, j) + b.coeff(i, j);
    return r;
}

template <Scalar S>
QuadraticForm<S> scale(const QuadraticForm<S>& q, const S& s) {
    QuadraticForm<S> r(q.n());
    for (int i = 0; i < q.n(); ++i)
        for (int j = i; j < q.n(); ++j) r.coeff(i, j) = s * q.coeff(i, j);
    return r;
}

/// Coefficient-wise equality under the backend zero test.
template <Scalar S>
bool eq(const QuadraticForm<S>& a, const QuadraticForm<S>& b) {
    require_dim(a.n(), b.n(), "eq");
    for (int i = 0; i < a.n(); ++i)
        for (int j = i; j < a.n(); ++j)
            if (!scalar_eq(a.coeff(i, j), b.coeff(i, j))) return false;
    return true;
}

namespace detail {
template <Scalar S>
std::string coeff_text(const S& c) {
    std::string s = c.to_string();
    return s.find_first_of("+-", 1) == std::string::npos ? s : "(" + s + ")";
}
}  // namespace detail

/// Canonical text: ascending monomials, zero terms omitted, e.g. "z1^2 + 4*z1*z2".
template <Scalar S>
std::string render(const QuadraticForm<S>& q) {
    std::string out;
    auto term = [&](const S& c, const std::string& mono) {
        if (c.is_zero()) return;
        const bool lead = out.empty();
        std::string ct = detail::coeff_text(c);
        bool neg = false;
        if (!ct.empty() && ct[0] == '-' && ct.find_first_of("+-", 1) == std::string::npos) {
            neg = true;
            ct = ct.substr(1);
        }
        std::string body = (ct == "1") ? mono : ct + "*" + mono;
        if (lead)
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    };
    for (int i = 0; i < q.n(); ++i)
        for (int j = i; j < q.n(); ++j) {
            const std::string zi = "z" + std::to_string(i + 1);
            const std::string zj = "z" + std::to_string(j + 1);
            term(q.coeff(i, j), i == j ? zi + "^2" : zi + "*" + zj);
        }
    return out.empty() ? "0" : out;
}

template <Scalar S>
std::string render(const LinearForm<S>& l) {
    std::string out;
    for (int i = 0; i < l.n(); ++i) {
        const S& c = l.coeff(i);
        if (c.is_zero()) continue;
        std::string ct = detail::coeff_text(c);
        bool neg = false;
        if (!ct.empty() && ct[0] == '-' && ct.find_first_of("+-", 1) == std::string::npos) {
            neg = true;
            ct = ct.substr(1);
        }
        std::string body = (ct == "1") ? "z" + std::to_string(i + 1)
                                       : ct + "*z" + std::to_string(i + 1);
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out.empty() ? "0" : out;
}

}  // namespace murank
