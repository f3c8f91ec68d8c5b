// Walkthrough of the library API: build a skew ring, expand a product of
// linear forms, classify the resulting quadratic form, and recover a
// verified factorization.

#include <murank/factor.hpp>
#include <murank/parser.hpp>
#include <murank/rankcore.hpp>

#include <iostream>

using namespace murank;

int main() {
    // the ring S on four generators with z_j z_i = 2 z_i z_j for i < j
    const auto mu = parse_mu<QuadExt>("mu12=2,mu13=2,mu14=2,mu23=2,mu24=2,mu34=2", 4);

    // Q = (z1 + z2 + z3 + z4)(z1 + 2z2 + 2z3 + 2z4), expanded in normal order
    LinearForm<QuadExt> l1(4), l2(4);
    for (int i = 0; i < 4; ++i) {
        l1.coeff(i) = QuadExt(1);
        l2.coeff(i) = QuadExt(i == 0 ? 1 : 2);
    }
    const QuadraticForm<QuadExt> q = multiply_linear(l1, l2, mu);
    std::cout << "Q = " << render(q) << "\n\n";

    // classify: the 2x2-style minors D1..D21 decide squares, the signed
    // determinants D25..D27 decide products when the z1^2 coefficient is
    // nonzero
    const RankReport<QuadExt> report = murank4(q, mu);
    std::cout << "mu-rank(Q) = " << rank_text(report.rank, report.n) << "\n";
    std::cout << "D1 = " << report.d_values.at(1).to_string() << " (nonzero: not a square)\n";
    for (int i = 25; i <= 27; ++i)
        std::cout << "D" << i << " = " << report.d_values.at(i).to_string() << "\n";

    // reconstruct a factorization and re-expand it as a check
    if (const auto f = factor_form(q, mu)) {
        std::cout << "\nQ = ";
        if (!f->prefactor.is_rational() || !f->prefactor.as_rational().is_one())
            std::cout << "(" << f->prefactor.to_string() << ") * ";
        std::cout << "(" << render(f->factors.front()) << ") * (" << render(f->factors.back())
                  << ")\n";
        std::cout << "re-expansion check: " << (verify_factorization(q, *f, mu) ? "ok" : "BROKEN")
                  << "\n";
    }
    return 0;
}
