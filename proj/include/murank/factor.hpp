#pragma once

#include "murank/rankcore.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace murank {

enum class FactorKind { square, product };

/**
 * A constructive witness: Q = prefactor · L² (square, one factor) or
 * Q = prefactor · L1·L2 (product, two factors). Every factorization
 * returned by the factor operations has been re-expanded and checked
 * against Q, recorded in `verified`.
 */
template <Scalar S>
struct Factorization {
    FactorKind kind = FactorKind::product;
    std::vector<LinearForm<S>> factors;
    S prefactor = S::one();
    std::string provenance;
    std::optional<SignChoice> signs;
    bool verified = false;
};

/// True iff prefactor · (product of factors) re-expands to q.
template <Scalar S>
bool verify_factorization(const QuadraticForm<S>& q, const Factorization<S>& f,
                          const MuParams<S>& mu) {
    if (f.factors.empty() || f.factors.size() > 2) return false;
    const LinearForm<S>& l1 = f.factors.front();
    const LinearForm<S>& l2 = f.factors.back();
    require_dim(l1.n(), q.n(), "verify_factorization");
    require_dim(l2.n(), q.n(), "verify_factorization");
    return eq(scale(multiply_linear(l1, l2, mu), f.prefactor), q);
}

namespace detail {

/// Builds the factorization and keeps it only if re-expansion matches q.
template <Scalar S>
std::optional<Factorization<S>> make_verified(const QuadraticForm<S>& q, const MuParams<S>& mu,
                                              FactorKind kind, std::vector<LinearForm<S>> factors,
                                              S prefactor, std::string provenance,
                                              std::optional<SignChoice> signs = std::nullopt) {
    Factorization<S> f;
    f.kind = kind;
    f.factors = std::move(factors);
    f.prefactor = std::move(prefactor);
    f.provenance = std::move(provenance);
    f.signs = signs;
    if (!verify_factorization(q, f, mu)) return std::nullopt;
    f.verified = true;
    return f;
}

template <Scalar S>
LinearForm<S> lf(std::vector<S> coeffs) {
    return LinearForm<S>(std::move(coeffs));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Q = L² : complete enumeration over the diagonal square roots.
// ---------------------------------------------------------------------------

/**
 * Finds L with Q = L² if one exists. Any such L must satisfy α_i² = c_ii,
 * so candidates are sign vectors over sqrt_candidates(c_ii), the global
 * sign fixed at the first nonzero diagonal entry; each candidate is
 * re-expanded and the first exact match returned.
 */
template <Scalar S>
std::optional<Factorization<S>> factor_square(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    const int n = q.n();
    require_dim(n, mu.n(), "factor_square");
    if (n != 3 && n != 4) throw std::invalid_argument("factor_square: n must be 3 or 4");
    if (q.is_zero())
        return detail::make_verified(q, mu, FactorKind::square, {LinearForm<S>(n)}, S::one(),
                                     "square.zero");
    std::vector<std::vector<S>> cands(static_cast<std::size_t>(n));
    int first_nonzero = -1;
    for (int i = 0; i < n; ++i) {
        const S& c = q.coeff(i, i);
        if (c.is_zero()) {
            cands[static_cast<std::size_t>(i)] = {S::zero()};
        } else {
            auto roots = sqrt_candidates(c);
            if (first_nonzero < 0) {
                first_nonzero = i;
                roots.resize(1);  // fix the global sign of L here
            }
            cands[static_cast<std::size_t>(i)] = std::move(roots);
        }
    }
    if (first_nonzero < 0) return std::nullopt;  // nonzero Q, all-zero diagonal
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    for (;;) {
        LinearForm<S> l(n);
        for (int i = 0; i < n; ++i) l.coeff(i) = cands[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
        if (auto f = detail::make_verified(q, mu, FactorKind::square, {l}, S::one(),
                                           "square.enumeration"))
            return f;
        int i = n - 1;
        while (i >= 0 && ++pick[static_cast<std::size_t>(i)] >= cands[static_cast<std::size_t>(i)].size())
            pick[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Q = L1·L2, three generators.
// ---------------------------------------------------------------------------

/// Product factorization for n = 3 with vanishing leading coefficient.
template <Scalar S>
std::optional<Factorization<S>> factor_product3_azero(const QuadraticForm<S>& q,
                                                      const MuParams<S>& mu) {
    require_dim(q.n(), 3, "factor_product3_azero");
    if (!q.coeff(0, 0).is_zero())
        throw std::invalid_argument("factor_product3_azero: leading coefficient must vanish");
    if (q.is_zero()) return std::nullopt;
    const S one = S::one(), two = S::from_int(2), zero = S::zero();
    const MuSymMatrix<S> m = matrix_from_form(q, mu);
    const S b = m.a(1, 1), c = m.a(2, 2);
    const S d = m.a(0, 1), e = m.a(0, 2), f = m.a(1, 2);
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };
    const bool dz = d.is_zero(), ez = e.is_zero();
    if (!dz && !ez) {
        const S i2d = (two * d).inverse(), i2e = (two * e).inverse();
        if (auto r = detail::make_verified(
                q, mu, FactorKind::product,
                {detail::lf<S>({one, b * i2d, c * i2e}), detail::lf<S>({zero, two * d, two * e})},
                one, "product3.azero.cross.Q1"))
            return r;
        return detail::make_verified(
            q, mu, FactorKind::product,
            {detail::lf<S>({zero, two * u(2, 1) * d, two * u(3, 1) * e}),
             detail::lf<S>({one, u(1, 2) * b * i2d, u(1, 3) * c * i2e})},
            one, "product3.azero.cross.Q2");
    }
    if (dz && !ez)
        return detail::make_verified(
            q, mu, FactorKind::product,
            {detail::lf<S>({two * e, two * f, c}), detail::lf<S>({zero, zero, one})}, one,
            "product3.azero.single");
    if (!dz && ez) {
        // swap generators 2 and 3 to reuse the previous case
        const std::vector<int> perm{0, 2, 1};
        auto [q2, mu2] = relabel(q, mu, perm);
        if (auto inner = factor_product3_azero(q2, mu2)) {
            const auto inv = inverse_permutation(perm);
            std::vector<LinearForm<S>> back{relabel(inner->factors[0], inv),
                                            relabel(inner->factors[1], inv)};
            return detail::make_verified(q, mu, FactorKind::product, std::move(back),
                                         inner->prefactor, inner->provenance + ".swapped23");
        }
        return std::nullopt;
    }
    // d = e = 0: binary quadratic form in z2, z3
    if (!b.is_zero()) {
        for (const S& root : sqrt_candidates(f * f - u(2, 3) * b * c)) {
            const S t = (f + root) * b.inverse();
            const S s = u(3, 2) * (f - root);
            if (auto r = detail::make_verified(
                    q, mu, FactorKind::product,
                    {detail::lf<S>({zero, b, s}), detail::lf<S>({zero, one, t})}, one,
                    "product3.azero.binary"))
                return r;
        }
        return std::nullopt;
    }
    return detail::make_verified(
        q, mu, FactorKind::product,
        {detail::lf<S>({zero, q.coeff(1, 2), c}), detail::lf<S>({zero, zero, one})}, one,
        "product3.azero.binary.degenerate");
}

/// Product factorization for n = 3 with nonvanishing leading coefficient:
/// the signed root construction, all four sign choices tried in order.
template <Scalar S>
std::optional<Factorization<S>> factor_product3_anonzero(const QuadraticForm<S>& q,
                                                         const MuParams<S>& mu) {
    require_dim(q.n(), 3, "factor_product3_anonzero");
    const S a = q.coeff(0, 0);
    if (a.is_zero())
        throw std::invalid_argument("factor_product3_anonzero: leading coefficient must not vanish");
    const MuSymMatrix<S> m = matrix_from_form(q, mu);
    const S d = m.a(0, 1), e = m.a(0, 2);
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };
    const auto disc = discriminants3(m, mu);
    const Root<S> rx = principal_root(disc[0]), ry = principal_root(disc[1]);
    for (const SignChoice& sign : all_sign_choices3()) {
        const S x = rx.with_sign(sign.sx), y = ry.with_sign(sign.sy);
        auto r = detail::make_verified(
            q, mu, FactorKind::product,
            {detail::lf<S>({a, u(2, 1) * (d + x), u(3, 1) * (e + y)}),
             detail::lf<S>({a, d - x, e - y})},
            a.inverse(), "product3.anonzero." + sign.to_string(), sign);
        if (r) return r;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Q = L1·L2, four generators.
// ---------------------------------------------------------------------------

template <Scalar S>
std::optional<Factorization<S>> factor_product3(const QuadraticForm<S>& q, const MuParams<S>& mu);

/**
 * Product factorization for n = 4, a11 = 0, by the vanishing pattern of
 * a12, a13, a14: both candidate constructions are attempted wherever two
 * exist, and symmetric patterns are reduced by relabeling.
 */
template <Scalar S>
std::optional<Factorization<S>> factor_product_a11zero(const QuadraticForm<S>& q,
                                                       const MuParams<S>& mu) {
    require_dim(q.n(), 4, "factor_product_a11zero");
    if (!q.coeff(0, 0).is_zero())
        throw std::invalid_argument("factor_product_a11zero: a11 must vanish");
    if (q.is_zero()) return std::nullopt;
    const S one = S::one(), two = S::from_int(2), zero = S::zero();
    const MuSymMatrix<S> m = matrix_from_form(q, mu);
    auto a = [&](int i, int j) { return m.a(i - 1, j - 1); };
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };

    std::vector<int> nonzero, zeros;  // 0-based generator indices 1..3
    for (int j = 1; j < 4; ++j) (a(1, j + 1).is_zero() ? zeros : nonzero).push_back(j);

    if (nonzero.size() == 3) {
        const S i12 = (two * a(1, 2)).inverse(), i13 = (two * a(1, 3)).inverse(),
                i14 = (two * a(1, 4)).inverse();
        if (auto r = detail::make_verified(
                q, mu, FactorKind::product,
                {detail::lf<S>({one, a(2, 2) * i12, a(3, 3) * i13, a(4, 4) * i14}),
                 detail::lf<S>({zero, two * a(1, 2), two * a(1, 3), two * a(1, 4)})},
                one, "product4.a11zero.case1.Q1"))
            return r;
        return detail::make_verified(
            q, mu, FactorKind::product,
            {detail::lf<S>({zero, two * u(2, 1) * a(1, 2), two * u(3, 1) * a(1, 3),
                            two * u(4, 1) * a(1, 4)}),
             detail::lf<S>({one, u(1, 2) * a(2, 2) * i12, u(1, 3) * a(3, 3) * i13,
                            u(1, 4) * a(4, 4) * i14})},
            one, "product4.a11zero.case1.Q2");
    }

    if (nonzero.size() == 2) {
        // canonical pattern: a12 = 0, a13·a14 != 0
        std::vector<int> perm(4);
        perm[0] = 0;
        perm[static_cast<std::size_t>(zeros[0])] = 1;
        perm[static_cast<std::size_t>(nonzero[0])] = 2;
        perm[static_cast<std::size_t>(nonzero[1])] = 3;
        auto [q2, mu2] = relabel(q, mu, perm);
        const MuSymMatrix<S> m2 = matrix_from_form(q2, mu2);
        auto a2 = [&](int i, int j) { return m2.a(i - 1, j - 1); };
        auto u2 = [&](int i, int j) { return mu2.mu(i - 1, j - 1); };
        const S i13 = (two * a2(1, 3)).inverse(), i14 = (two * a2(1, 4)).inverse();
        const S ia13 = a2(1, 3).inverse();
        std::optional<Factorization<S>> inner = detail::make_verified(
            q2, mu2, FactorKind::product,
            {detail::lf<S>({one, a2(2, 3) * ia13, a2(3, 3) * i13, a2(4, 4) * i14}),
             detail::lf<S>({zero, zero, two * a2(1, 3), two * a2(1, 4)})},
            one, "product4.a11zero.case2.Q1");
        if (!inner)
            inner = detail::make_verified(
                q2, mu2, FactorKind::product,
                {detail::lf<S>({zero, zero, two * u2(3, 1) * a2(1, 3), two * u2(4, 1) * a2(1, 4)}),
                 detail::lf<S>({one, u2(3, 2) * u2(1, 3) * a2(2, 3) * ia13,
                                u2(1, 3) * a2(3, 3) * i13, u2(1, 4) * a2(4, 4) * i14})},
                one, "product4.a11zero.case2.Q2");
        if (!inner) return std::nullopt;
        const auto inv = inverse_permutation(perm);
        std::vector<LinearForm<S>> back{relabel(inner->factors[0], inv),
                                        relabel(inner->factors[1], inv)};
        return detail::make_verified(q, mu, FactorKind::product, std::move(back), inner->prefactor,
                                     inner->provenance);
    }

    if (nonzero.size() == 1) {
        // canonical pattern: a12 = a13 = 0, a14 != 0 -> Q = (...)·z4
        std::vector<int> perm(4);
        perm[0] = 0;
        perm[static_cast<std::size_t>(zeros[0])] = 1;
        perm[static_cast<std::size_t>(zeros[1])] = 2;
        perm[static_cast<std::size_t>(nonzero[0])] = 3;
        auto [q2, mu2] = relabel(q, mu, perm);
        const MuSymMatrix<S> m2 = matrix_from_form(q2, mu2);
        auto a2 = [&](int i, int j) { return m2.a(i - 1, j - 1); };
        auto inner = detail::make_verified(
            q2, mu2, FactorKind::product,
            {detail::lf<S>({two * a2(1, 4), two * a2(2, 4), two * a2(3, 4), a2(4, 4)}),
             detail::lf<S>({zero, zero, zero, one})},
            one, "product4.a11zero.case2.singleGenerator");
        if (!inner) return std::nullopt;
        const auto inv = inverse_permutation(perm);
        std::vector<LinearForm<S>> back{relabel(inner->factors[0], inv),
                                        relabel(inner->factors[1], inv)};
        return detail::make_verified(q, mu, FactorKind::product, std::move(back), inner->prefactor,
                                     inner->provenance);
    }

    // a12 = a13 = a14 = 0: a quadratic form on z2, z3, z4
    QuadraticForm<S> q3(3);
    MuParams<S> mu3(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mu3.at(i, j) = mu.mu(i + 1, j + 1);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) q3.coeff(i, j) = q.coeff(i + 1, j + 1);
    auto inner = factor_product3(q3, mu3);
    if (!inner) return std::nullopt;
    std::vector<LinearForm<S>> lifted;
    for (const auto& l3 : inner->factors) {
        LinearForm<S> l4(4);
        for (int i = 0; i < 3; ++i) l4.coeff(i + 1) = l3.coeff(i);
        lifted.push_back(std::move(l4));
    }
    return detail::make_verified(q, mu, FactorKind::product, std::move(lifted), inner->prefactor,
                                 "product4.a11zero.threeGen." + inner->provenance, inner->signs);
}

/**
 * Product factorization for n = 4, a11 != 0: for each of the eight sign
 * choices build the two displayed factors from the roots X, Y, Z and keep
 * the first pair whose re-expansion, scaled by a11⁻¹, equals Q.
 */
template <Scalar S>
std::optional<Factorization<S>> factor_product_a11nonzero(const QuadraticForm<S>& q,
                                                          const MuParams<S>& mu) {
    require_dim(q.n(), 4, "factor_product_a11nonzero");
    const S a11 = q.coeff(0, 0);
    if (a11.is_zero())
        throw std::invalid_argument("factor_product_a11nonzero: a11 must not vanish");
    const MuSymMatrix<S> m = matrix_from_form(q, mu);
    auto a = [&](int i, int j) { return m.a(i - 1, j - 1); };
    auto u = [&](int i, int j) { return mu.mu(i - 1, j - 1); };
    const auto disc = discriminants4(m, mu);
    const std::array<Root<S>, 3> roots{principal_root(disc[0]), principal_root(disc[1]),
                                       principal_root(disc[2])};
    for (const SignChoice& sign : all_sign_choices4()) {
        const S x = roots[0].with_sign(sign.sx);
        const S y = roots[1].with_sign(sign.sy);
        const S z = roots[2].with_sign(sign.sz);
        auto r = detail::make_verified(
            q, mu, FactorKind::product,
            {detail::lf<S>({a11, u(2, 1) * (a(1, 2) + x), u(3, 1) * (a(1, 3) + y),
                            u(4, 1) * (a(1, 4) + z)}),
             detail::lf<S>({a11, a(1, 2) - x, a(1, 3) - y, a(1, 4) - z})},
            a11.inverse(), "product4.a11nonzero." + sign.to_string(), sign);
        if (r) return r;
    }
    return std::nullopt;
}

/// Product factorization dispatch for n = 3.
template <Scalar S>
std::optional<Factorization<S>> factor_product3(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    return q.coeff(0, 0).is_zero() ? factor_product3_azero(q, mu)
                                   : factor_product3_anonzero(q, mu);
}

/// Product factorization dispatch for n = 3 or 4.
template <Scalar S>
std::optional<Factorization<S>> factor_product(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    if (q.n() == 3) return factor_product3(q, mu);
    if (q.n() == 4)
        return q.coeff(0, 0).is_zero() ? factor_product_a11zero(q, mu)
                                       : factor_product_a11nonzero(q, mu);
    throw std::invalid_argument("factor_product: n must be 3 or 4");
}

/// Preferred witness for any Q of μ-rank <= 2: a square if one exists,
/// otherwise a product.
template <Scalar S>
std::optional<Factorization<S>> factor_form(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    if (auto s = factor_square(q, mu)) return s;
    return factor_product(q, mu);
}

}  // namespace murank
