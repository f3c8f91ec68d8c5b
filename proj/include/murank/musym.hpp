#pragma once

#include "murank/skewring.hpp"

namespace murank {

/**
 * μ-symmetric matrix: M_ij = μ_ij · M_ji for all i, j. The full n×n matrix
 * is stored so the symmetry invariant stays independently checkable; a(i,j)
 * with i <= j exposes the representative entries.
 */
template <Scalar S>
class MuSymMatrix {
public:
    explicit MuSymMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n * n), S::zero()) {}

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const S& at(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }
    S& at(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }

    /// Representative entry a_ij, i <= j (0-based).
    [[nodiscard]] const S& a(int i, int j) const {
        if (i > j) throw std::invalid_argument("MuSymMatrix::a: need i <= j");
        return at(i, j);
    }

    [[nodiscard]] bool is_mu_symmetric(const MuParams<S>& mu) const {
        require_dim(n_, mu.n(), "MuSymMatrix::is_mu_symmetric");
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (!scalar_eq(at(i, j), mu.mu(i, j) * at(j, i))) return false;
        return true;
    }

private:
    int n_;
    std::vector<S> e_;
};

/**
 * The matrix associated to a quadratic form under M ↔ zᵀMz:
 * M_ii = c_ii, and for i < j M_ij = c_ij/2, M_ji = μ_ji·c_ij/2.
 */
template <Scalar S>
MuSymMatrix<S> matrix_from_form(const QuadraticForm<S>& q, const MuParams<S>& mu) {
    require_dim(q.n(), mu.n(), "matrix_from_form");
    const S half = scalar_half<S>();
    MuSymMatrix<S> m(q.n());
    for (int i = 0; i < q.n(); ++i) {
        m.at(i, i) = q.coeff(i, i);
        for (int j = i + 1; j < q.n(); ++j) {
            m.at(i, j) = half * q.coeff(i, j);
            m.at(j, i) = mu.mu(j, i) * m.at(i, j);
        }
    }
    return m;
}

/// Expands zᵀMz into normal form: c_ii = M_ii, c_ij = M_ij + μ_ij·M_ji.
template <Scalar S>
QuadraticForm<S> form_from_matrix(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    require_dim(m.n(), mu.n(), "form_from_matrix");
    if (!m.is_mu_symmetric(mu))
        throw std::invalid_argument("form_from_matrix: matrix is not mu-symmetric");
    QuadraticForm<S> q(m.n());
    for (int i = 0; i < m.n(); ++i) {
        q.coeff(i, i) = m.at(i, i);
        for (int j = i + 1; j < m.n(); ++j)
            q.coeff(i, j) = m.at(i, j) + mu.mu(i, j) * m.at(j, i);
    }
    return q;
}

}  // namespace murank
