#include "murank/quadext.hpp"

#include <gtest/gtest.h>

#include <random>

using murank::BigInt;
using murank::QuadExt;
using murank::Rational;

namespace {

// random elements over the symbols sqrt(2), sqrt(-1), sqrt(3)
QuadExt random_element(std::mt19937_64& rng) {
    const std::array<BigInt, 3> cores{BigInt(2), BigInt(-1), BigInt(3)};
    QuadExt e = QuadExt::from_int(static_cast<std::int64_t>(rng() % 7) - 3);
    for (const auto& c : cores)
        if (rng() % 2)
            e += QuadExt::symbol(c) * QuadExt::from_int(static_cast<std::int64_t>(rng() % 7) - 3);
    if (rng() % 3 == 0)
        e += QuadExt::symbol(2) * QuadExt::symbol(-1) *
             QuadExt::from_int(static_cast<std::int64_t>(rng() % 5) - 2);
    return e;
}

}  // namespace

TEST(QuadExt, RationalEmbedding) {
    const QuadExt a = QuadExt::from_rational(Rational(BigInt(1), BigInt(3)));
    const QuadExt b = QuadExt::from_rational(Rational(BigInt(1), BigInt(6)));
    EXPECT_EQ(a + b, QuadExt::from_rational(Rational(BigInt(1), BigInt(2))));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(QuadExt(2).inverse(), QuadExt::from_rational(Rational(BigInt(1), BigInt(2))));
}

TEST(QuadExt, DefiningRelation) {
    // sqrt_candidates(2) gives ±X with X*X - 2 == 0
    const auto roots = sqrt_candidates(QuadExt(2));
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_EQ(roots[0], -roots[1]);
    for (const auto& r : roots) EXPECT_TRUE((r * r - QuadExt(2)).is_zero());
}

TEST(QuadExt, SqrtCandidatesShapes) {
    const auto four = sqrt_candidates(QuadExt(4));
    ASSERT_EQ(four.size(), 2u);
    EXPECT_EQ(four[0], QuadExt(2));
    EXPECT_EQ(four[1], QuadExt(-2));
    const auto zero = sqrt_candidates(QuadExt(0));
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].is_zero());
    // negative: imaginary unit
    for (const auto& r : sqrt_candidates(QuadExt(-1))) EXPECT_EQ(r * r, QuadExt(-1));
    // every root satisfies r*r == s on a small sweep
    for (std::int64_t s = -20; s <= 20; ++s)
        for (const auto& r : sqrt_candidates(QuadExt(s)))
            EXPECT_TRUE((r * r - QuadExt(s)).is_zero()) << "s=" << s;
}

TEST(QuadExt, SharedCoreCanonicalization) {
    // sqrt(8) = 2*sqrt(2), so sqrt(2)*sqrt(8) is rational
    const QuadExt r2 = sqrt_candidates(QuadExt(2)).front();
    const QuadExt r8 = sqrt_candidates(QuadExt(8)).front();
    EXPECT_EQ(r2 * r8, QuadExt(4));
    EXPECT_EQ(r8, QuadExt(2) * r2);
}

TEST(QuadExt, DifferenceOfSquares) {
    // (a + X)(a - X) == a^2 - x for X^2 = x
    const QuadExt a = QuadExt(5);
    const QuadExt x = QuadExt::symbol(3);
    EXPECT_EQ((a + x) * (a - x), QuadExt(25 - 3));
}

TEST(QuadExt, RingProperties) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 400; ++t) {
        const QuadExt a = random_element(rng), b = random_element(rng), c = random_element(rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(QuadExt, SignFlipAutomorphism) {
    std::mt19937_64 rng(13);
    const BigInt core(2);
    auto with_core = [&](QuadExt e) {
        for (const auto& c : e.cores())
            if (c == core) return e;
        return e + QuadExt::symbol(core);  // coordinate was zero, now 1
    };
    for (int t = 0; t < 400; ++t) {
        const QuadExt a = with_core(random_element(rng));
        const QuadExt b = with_core(random_element(rng));
        const QuadExt ab = a * b;
        EXPECT_EQ(a.sign_flip(core).sign_flip(core), a);  // involution
        // flip distributes over products (ring automorphism); the product may
        // have dropped the symbol entirely, in which case it is fixed
        const QuadExt lhs = [&] {
            for (const auto& cc : ab.cores())
                if (cc == core) return ab.sign_flip(core);
            return ab;
        }();
        EXPECT_EQ(lhs, a.sign_flip(core) * b.sign_flip(core));
    }
}

TEST(QuadExt, SignFlipFixesExactlyTheOtherCoords) {
    const QuadExt e = QuadExt(3) + QuadExt::symbol(2) * QuadExt(4) +
                      QuadExt::symbol(-1) * QuadExt(7) +
                      QuadExt::symbol(2) * QuadExt::symbol(-1);
    const QuadExt f = e.sign_flip(2);
    EXPECT_EQ(f.coord({}), Rational(3));
    EXPECT_EQ(f.coord({BigInt(2)}), Rational(-4));
    EXPECT_EQ(f.coord({BigInt(-1)}), Rational(7));
    EXPECT_EQ(f.coord({BigInt(-1), BigInt(2)}), Rational(-1));
}

TEST(QuadExt, SignFlipUnknownSymbolSignals) {
    EXPECT_THROW(QuadExt(1).sign_flip(BigInt(2)), std::invalid_argument);
}

TEST(QuadExt, InversionRules) {
    EXPECT_THROW(QuadExt(0).inverse(), murank::DivisionByZero);
    EXPECT_THROW(QuadExt::symbol(2).inverse(), std::domain_error);
    EXPECT_THROW(sqrt_candidates(QuadExt::symbol(2) + QuadExt(1)), std::domain_error);
}

TEST(QuadExt, ToString) {
    EXPECT_EQ(QuadExt(0).to_string(), "0");
    const QuadExt e = QuadExt(1) + QuadExt::symbol(2) * QuadExt::from_rational(Rational(BigInt(1), BigInt(2)));
    EXPECT_EQ(e.to_string(), "1 + 1/2*sqrt(2)");
}
