#include "murank/skewring.hpp"

#include <gtest/gtest.h>

#include "oracle_helpers.hpp"

using namespace murank;
using murank::testing::naive_expand;
using murank::testing::random_linear_form;
using murank::testing::random_mu_params;

namespace {

MuParams<QuadExt> example_mu2() {
    // mu_ij = 2 for i < j
    std::map<std::pair<int, int>, QuadExt> upper;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) upper[{i, j}] = QuadExt(2);
    return MuParams<QuadExt>::from_upper(4, upper);
}

}  // namespace

TEST(MuParams, Validation) {
    auto mu = MuParams<QuadExt>::commutative(3);
    EXPECT_NO_THROW(mu.validate());
    mu.at(0, 1) = QuadExt(2);
    EXPECT_THROW(mu.validate(), MuInvariantViolation);  // mu12*mu21 != 1
    mu.at(1, 0) = QuadExt::from_rational(Rational(BigInt(1), BigInt(2)));
    EXPECT_NO_THROW(mu.validate());
    mu.at(2, 2) = QuadExt(3);
    EXPECT_THROW(mu.validate(), MuInvariantViolation);  // mu_ii != 1
    mu.at(2, 2) = QuadExt(1);
    mu.at(0, 2) = QuadExt(0);
    EXPECT_THROW(mu.validate(), MuInvariantViolation);  // zero entry
}

TEST(SkewRing, CommutativeSquare) {
    const auto mu = MuParams<QuadExt>::commutative(3);
    LinearForm<QuadExt> l(3);
    l.coeff(0) = QuadExt(1);
    l.coeff(1) = QuadExt(1);
    const auto q = multiply_linear(l, l, mu);
    EXPECT_EQ(render(q), "z1^2 + 2*z1*z2 + z2^2");
}

TEST(SkewRing, DefiningRelation) {
    // z2 * z1 with mu12 = 5 rewrites to 5*z1*z2
    auto mu = MuParams<QuadExt>::from_upper(3, {{{0, 1}, QuadExt(5)}});
    LinearForm<QuadExt> l1(3), l2(3);
    l1.coeff(1) = QuadExt(1);  // z2
    l2.coeff(0) = QuadExt(1);  // z1
    const auto q = multiply_linear(l1, l2, mu);
    EXPECT_EQ(q.coeff(0, 1), QuadExt(5));
    EXPECT_EQ(render(q), "5*z1*z2");
}

TEST(SkewRing, WorkedExampleExpansion) {
    // (z1+z2+z3+z4)(z1+2z2+2z3+2z4) with mu_ij = 2 for i<j
    const auto mu = example_mu2();
    LinearForm<QuadExt> l1(4), l2(4);
    for (int i = 0; i < 4; ++i) {
        l1.coeff(i) = QuadExt(1);
        l2.coeff(i) = QuadExt(i == 0 ? 1 : 2);
    }
    const auto q = multiply_linear(l1, l2, mu);
    EXPECT_EQ(render(q),
              "z1^2 + 4*z1*z2 + 4*z1*z3 + 4*z1*z4 + 2*z2^2 + 6*z2*z3 + 6*z2*z4 + 2*z3^2 + "
              "6*z3*z4 + 2*z4^2");
}

TEST(SkewRing, AddScaleEq) {
    const auto mu = example_mu2();
    std::mt19937_64 rng(21);
    const auto l = random_linear_form<QuadExt>(4, rng);
    const auto q = multiply_linear(l, l, mu);
    EXPECT_TRUE(eq(add(q, QuadraticForm<QuadExt>::zero(4)), q));
    EXPECT_TRUE(eq(scale(q, QuadExt(1)), q));
    EXPECT_FALSE(eq(scale(q, QuadExt(2)), q) && !q.is_zero());
}

TEST(SkewRing, AgreesWithNaiveNormalOrderingOracle) {
    std::mt19937_64 rng(23);
    for (int n : {3, 4})
        for (int t = 0; t < 400; ++t) {
            const auto mu = random_mu_params<QuadExt>(n, rng);
            const auto l1 = random_linear_form<QuadExt>(n, rng);
            const auto l2 = random_linear_form<QuadExt>(n, rng);
            EXPECT_TRUE(eq(multiply_linear(l1, l2, mu), naive_expand(l1, l2, mu)));
        }
}

TEST(SkewRing, Bilinearity) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 300; ++t) {
        const auto mu = random_mu_params<QuadExt>(4, rng);
        const auto l1 = random_linear_form<QuadExt>(4, rng);
        const auto l1b = random_linear_form<QuadExt>(4, rng);
        const auto l2 = random_linear_form<QuadExt>(4, rng);
        const QuadExt a = QuadExt::from_rational(murank::testing::random_grid_rational(rng));
        const auto lhs = multiply_linear(a * l1 + l1b, l2, mu);
        const auto rhs = add(scale(multiply_linear(l1, l2, mu), a), multiply_linear(l1b, l2, mu));
        EXPECT_TRUE(eq(lhs, rhs));
    }
}

TEST(SkewRing, CommutativeSpecializationMatchesPolynomialProduct) {
    // with all mu = 1, the product is the ordinary symmetric expansion
    std::mt19937_64 rng(31);
    const auto mu = MuParams<QuadExt>::commutative(4);
    for (int t = 0; t < 200; ++t) {
        const auto l1 = random_linear_form<QuadExt>(4, rng);
        const auto l2 = random_linear_form<QuadExt>(4, rng);
        const auto q = multiply_linear(l1, l2, mu);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                const QuadExt expect =
                    i == j ? l1.coeff(i) * l2.coeff(i)
                           : l1.coeff(i) * l2.coeff(j) + l1.coeff(j) * l2.coeff(i);
                EXPECT_EQ(q.coeff(i, j), expect);
            }
    }
}

TEST(SkewRing, OppositeOrderRelation) {
    // multiply_linear(l1,l2) and (l2,l1): equal diagonals, upper coefficients
    // related by c_ij <-> alpha_j beta_i + mu_ij alpha_i beta_j
    std::mt19937_64 rng(37);
    for (int t = 0; t < 200; ++t) {
        const auto mu = random_mu_params<QuadExt>(4, rng);
        const auto l1 = random_linear_form<QuadExt>(4, rng);
        const auto l2 = random_linear_form<QuadExt>(4, rng);
        const auto q12 = multiply_linear(l1, l2, mu);
        const auto q21 = multiply_linear(l2, l1, mu);
        for (int i = 0; i < 4; ++i) {
            EXPECT_EQ(q12.coeff(i, i), q21.coeff(i, i));
            for (int j = i + 1; j < 4; ++j)
                EXPECT_EQ(q21.coeff(i, j),
                          l2.coeff(i) * l1.coeff(j) + mu.mu(i, j) * (l2.coeff(j) * l1.coeff(i)));
        }
    }
}

TEST(SkewRing, DimensionMismatchSignaled) {
    const auto mu3 = MuParams<QuadExt>::commutative(3);
    LinearForm<QuadExt> l4(4), l3(3);
    EXPECT_THROW(multiply_linear(l4, l3, mu3), std::invalid_argument);
    EXPECT_THROW(add(QuadraticForm<QuadExt>(3), QuadraticForm<QuadExt>(4)),
                 std::invalid_argument);
}
