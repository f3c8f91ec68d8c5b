#pragma once

#include "murank/musym.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace murank {

/// Verdict of the rank classifiers. For three generators the final verdict
/// is exactly 3; for four generators the theory stops at 2, so everything
/// beyond is reported as "at least 3".
enum class MuRank { zero, one, two, at_least_three };

inline std::string rank_text(MuRank r, int n) {
    switch (r) {
        case MuRank::zero: return "0";
        case MuRank::one: return "1";
        case MuRank::two: return "2";
        case MuRank::at_least_three: return n == 3 ? "3" : ">=3";
    }
    return "?";
}

/// A choice among the two square roots of each discriminant. sz is unused
/// for n = 3.
struct SignChoice {
    int sx = +1, sy = +1, sz = +1;

    [[nodiscard]] std::string to_string() const {
        auto c = [](int s) { return s > 0 ? '+' : '-'; };
        return {c(sx), c(sy), c(sz)};
    }
    friend bool operator==(const SignChoice& a, const SignChoice& b) {
        return a.sx == b.sx && a.sy == b.sy && a.sz == b.sz;
    }
};

/// Enumeration order: +++ first, then flipping Z, then Y, then X.
inline std::array<SignChoice, 8> all_sign_choices4() {
    std::array<SignChoice, 8> out{};
    int k = 0;
    for (int sx : {+1, -1})
        for (int sy : {+1, -1})
            for (int sz : {+1, -1}) out[static_cast<std::size_t>(k++)] = {sx, sy, sz};
    return out;
}

/// ++ first, then flipping Y, then X (sz fixed at +1).
inline std::array<SignChoice, 4> all_sign_choices3() {
    std::array<SignChoice, 4> out{};
    int k = 0;
    for (int sx : {+1, -1})
        for (int sy : {+1, -1}) out[static_cast<std::size_t>(k++)] = {sx, sy, +1};
    return out;
}

template <Scalar S>
struct RankReport {
    int n = 0;
    MuRank rank = MuRank::zero;
    std::map<int, S> d_values;               // every D_i evaluated during classification
    std::optional<SignChoice> witness_signs;  // present iff rank 2 via the a11 != 0 branch
    bool normalized = false;                  // whether Q was rescaled to make a11 ∈ {0,1}
};

/// A μ-determinant that is a product of two bracket factors; the brackets
/// are kept because the factor constructions dispatch on which one vanished.
template <Scalar S>
struct ProductDet {
    S value, bracket1, bracket2;
};

// ---------------------------------------------------------------------------
// D-functions, three generators. Matrix entries (0-based): a=M00, b=M11,
// c=M22, d=a01, e=a02, f=a12.
// ---------------------------------------------------------------------------

/// The six 2×2 μ-minors D1..D6. Their simultaneous vanishing characterizes
/// Q = L².
template <Scalar S>
std::array<S, 6> minors3(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), 3, "minors3");
    require_dim(mu.n(), 3, "minors3");
    const S one = S::one(), two = S::from_int(2), four = S::from_int(4);
    const S a = m.a(0, 0), b = m.a(1, 1), c = m.a(2, 2);
    const S d = m.a(0, 1), e = m.a(0, 2), f = m.a(1, 2);
    const S p12 = one + mu.mu(0, 1), p13 = one + mu.mu(0, 2), p23 = one + mu.mu(1, 2);
    return {
        four * d * d - p12 * p12 * a * b,
        four * e * e - p13 * p13 * a * c,
        four * f * f - p23 * p23 * b * c,
        two * p23 * d * e - p12 * p13 * a * f,
        two * p12 * e * f - p13 * p23 * c * d,
        two * p13 * d * f - p12 * p23 * b * e,
    };
}

/// The product-form μ-determinant D7 (gate for Q = L1·L2 when a = 0).
template <Scalar S>
ProductDet<S> dets3_d7(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), 3, "dets3_d7");
    const S two = S::from_int(2);
    const S b = m.a(1, 1), c = m.a(2, 2);
    const S d = m.a(0, 1), e = m.a(0, 2), f = m.a(1, 2);
    const S b1 = mu.mu(1, 2) * c * d * d - two * d * e * f + b * e * e;
    const S b2 = mu.mu(0, 2) * mu.mu(1, 0) * c * d * d - two * d * e * f +
                 mu.mu(0, 1) * mu.mu(1, 2) * mu.mu(2, 0) * b * e * e;
    return {b1 * b2, b1, b2};
}

/// The signed μ-determinant D8 at given roots X, Y of d² − μ12·ab and
/// e² − μ13·ac (gate for Q = L1·L2 when a != 0).
template <Scalar S>
S dets3_d8(const MuSymMatrix<S>& m, const MuParams<S>& mu, const S& x, const S& y) {
    require_dim(m.n(), 3, "dets3_d8");
    const S two = S::from_int(2);
    const S a = m.a(0, 0), d = m.a(0, 1), e = m.a(0, 2), f = m.a(1, 2);
    return mu.mu(1, 0) * (d + x) * (e - y) + mu.mu(1, 2) * mu.mu(2, 0) * (d - x) * (e + y) -
           two * a * f;
}

/// Discriminants whose roots the D8 test quantifies over.
template <Scalar S>
std::array<S, 2> discriminants3(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), 3, "discriminants3");
    const S a = m.a(0, 0), b = m.a(1, 1), c = m.a(2, 2);
    const S d = m.a(0, 1), e = m.a(0, 2);
    return {d * d - mu.mu(0, 1) * a * b, e * e - mu.mu(0, 2) * a * c};
}

// ---------------------------------------------------------------------------
// D-functions, four generators.
// ---------------------------------------------------------------------------

/// The twenty-one 3×3 μ-minors D1..D21. Their simultaneous vanishing
/// characterizes Q = L².
template <Scalar S>
std::array<S, 21> minors4(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), 4, "minors4");
    require_dim(mu.n(), 4, "minors4");
    const S one = S::one(), two = S::from_int(2), four = S::from_int(4);
    auto a = [&](int i, int j) { return m.a(i - 1, j - 1); };
    auto p = [&](int i, int j) { return one + mu.mu(i - 1, j - 1); };
    return {
        four * a(1, 2) * a(1, 2) - p(1, 2) * p(1, 2) * a(1, 1) * a(2, 2),              // D1
        four * a(1, 3) * a(1, 3) - p(1, 3) * p(1, 3) * a(1, 1) * a(3, 3),              // D2
        four * a(1, 4) * a(1, 4) - p(1, 4) * p(1, 4) * a(1, 1) * a(4, 4),              // D3
        four * a(2, 3) * a(2, 3) - p(2, 3) * p(2, 3) * a(2, 2) * a(3, 3),              // D4
        four * a(2, 4) * a(2, 4) - p(2, 4) * p(2, 4) * a(2, 2) * a(4, 4),              // D5
        four * a(3, 4) * a(3, 4) - p(3, 4) * p(3, 4) * a(3, 3) * a(4, 4),              // D6
        two * p(2, 3) * a(1, 2) * a(1, 3) - p(1, 2) * p(1, 3) * a(1, 1) * a(2, 3),     // D7
        two * p(2, 4) * a(1, 2) * a(1, 4) - p(1, 2) * p(1, 4) * a(1, 1) * a(2, 4),     // D8
        two * p(1, 3) * a(1, 2) * a(2, 3) - p(1, 2) * p(2, 3) * a(1, 3) * a(2, 2),     // D9
        two * p(1, 4) * a(1, 2) * a(2, 4) - p(1, 2) * p(2, 4) * a(1, 4) * a(2, 2),     // D10
        two * p(3, 4) * a(1, 3) * a(1, 4) - p(1, 3) * p(1, 4) * a(1, 1) * a(3, 4),     // D11
        two * p(1, 2) * a(1, 3) * a(2, 3) - p(1, 3) * p(2, 3) * a(3, 3) * a(1, 2),     // D12
        two * p(1, 4) * a(1, 3) * a(3, 4) - p(1, 3) * p(3, 4) * a(3, 3) * a(1, 4),     // D13
        two * p(1, 2) * a(1, 4) * a(2, 4) - p(1, 4) * p(2, 4) * a(1, 2) * a(4, 4),     // D14
        two * p(1, 3) * a(1, 4) * a(3, 4) - p(1, 4) * p(3, 4) * a(1, 3) * a(4, 4),     // D15
        two * p(3, 4) * a(2, 3) * a(2, 4) - p(2, 3) * p(2, 4) * a(2, 2) * a(3, 4),     // D16
        two * p(2, 4) * a(2, 3) * a(3, 4) - p(2, 3) * p(3, 4) * a(3, 3) * a(2, 4),     // D17
        two * p(2, 3) * a(2, 4) * a(3, 4) - p(2, 4) * p(3, 4) * a(2, 3) * a(4, 4),     // D18
        p(1, 3) * p(2, 4) * a(1, 2) * a(3, 4) - p(1, 2) * p(3, 4) * a(1, 3) * a(2, 4),  // D19
        p(1, 4) * p(2, 3) * a(1, 3) * a(2, 4) - p(1, 3) * p(2, 4) * a(1, 4) * a(2, 3),  // D20
        p(1, 2) * p(3, 4) * a(1, 4) * a(2, 3) - p(1, 4) * p(2, 3) * a(1, 2) * a(3, 4),  // D21
    };
}

/// The product-form μ-determinants D22, D23, D24 (gate for Q = L1·L2 when
/// a11 = 0), with both bracket factors of each retained.
template <Scalar S>
std::array<ProductDet<S>, 3> dets4_a11zero(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), 4, "dets4_a11zero");
    const S two = S::from_int(2);
    auto a = [&](int i, int j) { return m.a(i - 1, j - 1); };
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };
    auto det = [&](int r, int s) {
        // bracket pair built on the index triple (1, r, s)
        const S b1 = u(r, s) * a(s, s) * a(1, r) * a(1, r) - two * a(r, s) * a(1, r) * a(1, s) +
                     a(r, r) * a(1, s) * a(1, s);
        const S b2 = u(1, s) * u(r, 1) * a(s, s) * a(1, r) * a(1, r) -
                     two * a(r, s) * a(1, r) * a(1, s) +
                     u(r, s) * u(1, r) * u(s, 1) * a(r, r) * a(1, s) * a(1, s);
        return ProductDet<S>{b1 * b2, b1, b2};
    };
    return {det(2, 3), det(2, 4), det(3, 4)};
}

/// The signed μ-determinants D25, D26, D27 at given roots X, Y, Z (gate for
/// Q = L1·L2 when a11 != 0).
template <Scalar S>
std::array<S, 3> dets4_a11nonzero(const MuSymMatrix<S>& m, const MuParams<S>& mu, const S& x,
                                  const S& y, const S& z) {
    require_dim(m.n(), 4, "dets4_a11nonzero");
    const S two = S::from_int(2);
    auto a = [&](int i, int j) { return m.a(i - 1, j - 1); };
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };
    const S d25 = u(2, 1) * (a(1, 2) + x) * (a(1, 3) - y) +
                  u(2, 3) * u(3, 1) * (a(1, 3) + y) * (a(1, 2) - x) - two * a(2, 3) * a(1, 1);
    const S d26 = u(2, 1) * (a(1, 2) + x) * (a(1, 4) - z) +
                  u(2, 4) * u(4, 1) * (a(1, 4) + z) * (a(1, 2) - x) - two * a(2, 4) * a(1, 1);
    const S d27 = u(3, 1) * (a(1, 3) + y) * (a(1, 4) - z) +
                  u(3, 4) * u(4, 1) * (a(1, 4) + z) * (a(1, 3) - y) - two * a(3, 4) * a(1, 1);
    return {d25, d26, d27};
}

/// Discriminants whose roots the D8 test quantifies over, evaluated at the
/// root choice selected by a sign: convenience wrapper returning (D7, D8).
template <Scalar S>
std::pair<ProductDet<S>, S> dets3(const MuSymMatrix<S>& m, const MuParams<S>& mu,
                                  const SignChoice& sign);

/// D25..D27 at the root choice selected by a sign.
template <Scalar S>
std::array<S, 3> dets4_signed(const MuSymMatrix<S>& m, const MuParams<S>& mu,
                              const SignChoice& sign);

/// Discriminants whose roots X, Y, Z the D25..D27 tests quantify over.
template <Scalar S>
std::array<S, 3> discriminants4(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), 4, "discriminants4");
    auto a = [&](int i, int j) { return m.a(i - 1, j - 1); };
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };
    return {
        a(1, 2) * a(1, 2) - u(1, 2) * a(1, 1) * a(2, 2),
        a(1, 3) * a(1, 3) - u(1, 3) * a(1, 1) * a(3, 3),
        a(1, 4) * a(1, 4) - u(1, 4) * a(1, 1) * a(4, 4),
    };
}

// ---------------------------------------------------------------------------
// Root handling and the existential sign search.
// ---------------------------------------------------------------------------

/// Canonical square root of a discriminant plus what is known about it:
/// whether it is zero and, on the exact backend, the defining value of its
/// symbol when the root is irrational.
template <Scalar S>
struct Root {
    S value = S::zero();
    bool zero = true;
    std::optional<BigInt> core;  // exact backend only, set when symbolic

    [[nodiscard]] S with_sign(int sign) const { return sign > 0 ? value : -value; }
};

template <Scalar S>
Root<S> principal_root(const S& disc) {
    const auto roots = sqrt_candidates(disc);
    Root<S> r;
    r.value = roots.front();
    r.zero = roots.size() == 1;
    if constexpr (scalar_traits<S>::is_exact) {
        if (!r.zero && !r.value.is_rational()) r.core = r.value.cores().front();
    }
    return r;
}

template <Scalar S>
struct SignSearch {
    bool found = false;
    SignChoice sign{};
    std::vector<S> d_values;  // D-values at the witness sign (or at +..+)
};

namespace detail {

/// True when the flipped roots can be negated by sign_flip automorphisms on
/// an already-evaluated result: every flipped root must be symbolic and its
/// symbol must not occur in any unflipped root.
template <Scalar S>
bool flip_path_applies(const std::vector<const Root<S>*>& roots, const std::vector<int>& signs) {
    if constexpr (!scalar_traits<S>::is_exact) return false;
    std::vector<BigInt> flipped, fixed;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (roots[i]->zero) continue;
        if (signs[i] < 0) {
            if (!roots[i]->core) return false;  // rational nonzero root: no automorphism
            flipped.push_back(*roots[i]->core);
        } else if (roots[i]->core) {
            fixed.push_back(*roots[i]->core);
        }
    }
    for (const auto& f : flipped)
        for (const auto& g : fixed)
            if (f == g) return false;
    return true;
}

inline QuadExt flip_if_present(const QuadExt& e, const BigInt& core) {
    for (const auto& c : e.cores())
        if (c == core) return e.sign_flip(core);
    return e;
}

template <Scalar S>
std::vector<S> flip_values(const std::vector<S>& base, const std::vector<const Root<S>*>& roots,
                           const std::vector<int>& signs) {
    std::vector<S> out = base;
    if constexpr (scalar_traits<S>::is_exact) {
        std::vector<BigInt> done;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (signs[i] > 0 || roots[i]->zero) continue;
            const BigInt& core = *roots[i]->core;
            bool seen = false;
            for (const auto& d : done) seen = seen || d == core;
            if (seen) continue;  // shared core: one flip negates every occurrence
            done.push_back(core);
            for (auto& v : out) v = flip_if_present(v, core);
        }
    }
    return out;
}

template <Scalar S>
bool all_zero(const std::vector<S>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace detail

/**
 * Searches the 8 sign choices for one making D25 = D26 = D27 = 0.
 * On the exact backend, choices that only negate symbolic roots are derived
 * from a single base evaluation via sign_flip automorphisms; every other
 * choice is evaluated directly.
 */
template <Scalar S>
SignSearch<S> exists_sign_vanishing4(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    const auto disc = discriminants4(m, mu);
    const std::array<Root<S>, 3> roots{principal_root(disc[0]), principal_root(disc[1]),
                                       principal_root(disc[2])};
    const auto base_arr = dets4_a11nonzero(m, mu, roots[0].value, roots[1].value, roots[2].value);
    const std::vector<S> base(base_arr.begin(), base_arr.end());
    const std::vector<const Root<S>*> rp{&roots[0], &roots[1], &roots[2]};
    SignSearch<S> out;
    out.d_values = base;
    for (const SignChoice& sign : all_sign_choices4()) {
        const std::vector<int> signs{sign.sx, sign.sy, sign.sz};
        std::vector<S> d;
        if (sign == SignChoice{}) {
            d = base;
        } else if (detail::flip_path_applies(rp, signs)) {
            d = detail::flip_values(base, rp, signs);
        } else {
            const auto arr = dets4_a11nonzero(m, mu, roots[0].with_sign(sign.sx),
                                              roots[1].with_sign(sign.sy),
                                              roots[2].with_sign(sign.sz));
            d.assign(arr.begin(), arr.end());
        }
        if (detail::all_zero(d)) {
            out.found = true;
            out.sign = sign;
            out.d_values = d;
            return out;
        }
    }
    return out;
}

/// Same search over the 4 sign choices of (X, Y) for D8 = 0.
template <Scalar S>
SignSearch<S> exists_sign_vanishing3(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    const auto disc = discriminants3(m, mu);
    const std::array<Root<S>, 2> roots{principal_root(disc[0]), principal_root(disc[1])};
    const std::vector<S> base{dets3_d8(m, mu, roots[0].value, roots[1].value)};
    const std::vector<const Root<S>*> rp{&roots[0], &roots[1]};
    SignSearch<S> out;
    out.d_values = base;
    for (const SignChoice& sign : all_sign_choices3()) {
        const std::vector<int> signs{sign.sx, sign.sy};
        std::vector<S> d;
        if (sign == SignChoice{}) {
            d = base;
        } else if (detail::flip_path_applies(rp, signs)) {
            d = detail::flip_values(base, rp, signs);
        } else {
            d = {dets3_d8(m, mu, roots[0].with_sign(sign.sx), roots[1].with_sign(sign.sy))};
        }
        if (detail::all_zero(d)) {
            out.found = true;
            out.sign = sign;
            out.d_values = d;
            return out;
        }
    }
    return out;
}

template <Scalar S>
std::pair<ProductDet<S>, S> dets3(const MuSymMatrix<S>& m, const MuParams<S>& mu,
                                  const SignChoice& sign) {
    const auto disc = discriminants3(m, mu);
    const S x = principal_root(disc[0]).with_sign(sign.sx);
    const S y = principal_root(disc[1]).with_sign(sign.sy);
    return {dets3_d7(m, mu), dets3_d8(m, mu, x, y)};
}

template <Scalar S>
std::array<S, 3> dets4_signed(const MuSymMatrix<S>& m, const MuParams<S>& mu,
                              const SignChoice& sign) {
    const auto disc = discriminants4(m, mu);
    return dets4_a11nonzero(m, mu, principal_root(disc[0]).with_sign(sign.sx),
                            principal_root(disc[1]).with_sign(sign.sy),
                            principal_root(disc[2]).with_sign(sign.sz));
}

// ---------------------------------------------------------------------------
// Classifiers.
// ---------------------------------------------------------------------------

template <Scalar S>
RankReport<S> murank3(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    require_dim(q.n(), 3, "murank3");
    require_dim(mu.n(), 3, "murank3");
    RankReport<S> r;
    r.n = 3;
    if (q.is_zero()) {
        r.rank = MuRank::zero;
        return r;
    }
    QuadraticForm<S> qn = q;
    const S lead = q.coeff(0, 0);
    if (!lead.is_zero() && !scalar_eq(lead, S::one())) {
        qn = scale(q, lead.inverse());
        r.normalized = true;
    }
    const MuSymMatrix<S> m = matrix_from_form(qn, mu);
    const auto minors = minors3(m, mu);
    bool minors_zero = true;
    for (int i = 0; i < 6; ++i) {
        r.d_values.emplace(i + 1, minors[static_cast<std::size_t>(i)]);
        minors_zero = minors_zero && minors[static_cast<std::size_t>(i)].is_zero();
    }
    if (minors_zero) {
        r.rank = MuRank::one;
        return r;
    }
    if (qn.coeff(0, 0).is_zero()) {
        const auto d7 = dets3_d7(m, mu);
        r.d_values.emplace(7, d7.value);
        r.rank = d7.value.is_zero() ? MuRank::two : MuRank::at_least_three;
    } else {
        const auto search = exists_sign_vanishing3(m, mu);
        r.d_values.emplace(8, search.d_values.front());
        if (search.found) {
            r.rank = MuRank::two;
            r.witness_signs = search.sign;
        } else {
            r.rank = MuRank::at_least_three;
        }
    }
    return r;
}

template <Scalar S>
RankReport<S> murank4(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    require_dim(q.n(), 4, "murank4");
    require_dim(mu.n(), 4, "murank4");
    RankReport<S> r;
    r.n = 4;
    if (q.is_zero()) {
        r.rank = MuRank::zero;
        return r;
    }
    QuadraticForm<S> qn = q;
    const S lead = q.coeff(0, 0);
    if (!lead.is_zero() && !scalar_eq(lead, S::one())) {
        qn = scale(q, lead.inverse());
        r.normalized = true;
    }
    const MuSymMatrix<S> m = matrix_from_form(qn, mu);
    const auto minors = minors4(m, mu);
    bool minors_zero = true;
    for (int i = 0; i < 21; ++i) {
        r.d_values.emplace(i + 1, minors[static_cast<std::size_t>(i)]);
        minors_zero = minors_zero && minors[static_cast<std::size_t>(i)].is_zero();
    }
    if (minors_zero) {
        r.rank = MuRank::one;
        return r;
    }
    if (qn.coeff(0, 0).is_zero()) {
        const auto dets = dets4_a11zero(m, mu);
        bool all = true;
        for (int i = 0; i < 3; ++i) {
            r.d_values.emplace(22 + i, dets[static_cast<std::size_t>(i)].value);
            all = all && dets[static_cast<std::size_t>(i)].value.is_zero();
        }
        r.rank = all ? MuRank::two : MuRank::at_least_three;
    } else {
        const auto search = exists_sign_vanishing4(m, mu);
        for (int i = 0; i < 3; ++i) r.d_values.emplace(25 + i, search.d_values[static_cast<std::size_t>(i)]);
        if (search.found) {
            r.rank = MuRank::two;
            r.witness_signs = search.sign;
        } else {
            r.rank = MuRank::at_least_three;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Generator relabeling (the "by symmetry" reductions made executable).
// ---------------------------------------------------------------------------

inline void validate_permutation(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("relabel: permutation size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("relabel: not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
}

inline std::vector<int> inverse_permutation(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

/// Renames z_i -> z_perm[i], transporting μ and the coefficients. μ-rank and
/// factorability are preserved (the map is a ring isomorphism).
template <Scalar S>
std::pair<QuadraticForm<S>, MuParams<S>> relabel(const QuadraticForm<S>& q, const MuParams<S>& mu,
                                                 const std::vector<int>& perm) {
    const int n = q.n();
    require_dim(n, mu.n(), "relabel");
    validate_permutation(perm, n);
    MuParams<S> mu2(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mu2.at(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = mu.mu(i, j);
    QuadraticForm<S> q2(n);
    for (int i = 0; i < n; ++i) {
        q2.coeff(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i)]) = q.coeff(i, i);
        for (int j = i + 1; j < n; ++j) {
            const int pi = perm[static_cast<std::size_t>(i)], pj = perm[static_cast<std::size_t>(j)];
            if (pi < pj)
                q2.coeff(pi, pj) = q.coeff(i, j);
            else
                q2.coeff(pj, pi) = mu.mu(j, i) * q.coeff(i, j);  // z_pi z_pj normal-ordered
        }
    }
    return {q2, mu2};
}

template <Scalar S>
LinearForm<S> relabel(const LinearForm<S>& l, const std::vector<int>& perm) {
    validate_permutation(perm, l.n());
    LinearForm<S> out(l.n());
    for (int i = 0; i < l.n(); ++i) out.coeff(perm[static_cast<std::size_t>(i)]) = l.coeff(i);
    return out;
}

}  // namespace murank
