#include "murank/complexf.hpp"

#include <gtest/gtest.h>

#include <random>

using murank::ComplexF;

TEST(ComplexF, BasicArithmetic) {
    const ComplexF a(1.0, 2.0), b(3.0, -1.0);
    EXPECT_TRUE((a + b - b - a).is_zero());
    EXPECT_TRUE((a * b - b * a).is_zero());
    EXPECT_TRUE((a * a.inverse() - ComplexF::one()).is_zero());
    EXPECT_THROW((void)ComplexF::zero().inverse(), murank::DivisionByZero);
}

TEST(ComplexF, RelativeToleranceZeroTest) {
    // a residue of 1 after cancellation at scale 1e6 is significant
    const ComplexF big(1e6);
    EXPECT_FALSE((big + ComplexF(1.0) - big).is_zero());
    // but at scale 1e12 the same residue is within relative tolerance
    const ComplexF huge(1e12);
    EXPECT_TRUE((huge + ComplexF(1.0) - huge - ComplexF(1.0)).is_zero());
    EXPECT_TRUE((huge + ComplexF(1e-3) - huge).is_zero());
    // a genuinely tiny standalone value is not zero by default tolerance
    EXPECT_FALSE(ComplexF(1e-6).is_zero());
    EXPECT_TRUE(ComplexF(0.0).is_zero());
}

TEST(ComplexF, SqrtCandidates) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 500; ++t) {
        const double re = static_cast<double>(rng() % 2000) / 100.0 - 10.0;
        const double im = static_cast<double>(rng() % 2000) / 100.0 - 10.0;
        const ComplexF s(re, im);
        for (const auto& r : sqrt_candidates(s)) EXPECT_TRUE((r * r - s).is_zero());
    }
    const auto z = sqrt_candidates(ComplexF::zero());
    ASSERT_EQ(z.size(), 1u);
    EXPECT_TRUE(z[0].is_zero());
}

TEST(ComplexF, NonFiniteRejected) {
    EXPECT_THROW(ComplexF(1e308) * ComplexF(1e308), std::domain_error);
}

TEST(ComplexF, ScaleGrowsMultiplicatively) {
    const ComplexF a = ComplexF(1e8) + ComplexF(3.0) - ComplexF(1e8);  // value 3, scale ~1e8
    EXPECT_NEAR(a.value().real(), 3.0, 1e-6);
    const ComplexF b = a * ComplexF(2.0);
    EXPECT_GE(b.scale(), 1e8);
}
