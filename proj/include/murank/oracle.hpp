#pragma once

#include "murank/factor.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace murank {

/// Deterministic per-trial seed derivation (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Random-instance configuration: coefficient grid, μ grid (sampled on the
/// strict upper triangle only, reciprocals filled in), master seed.
struct InstanceSpec {
    int n = 4;
    std::vector<Rational> coeff_grid;
    std::vector<Rational> mu_grid;
    std::uint64_t seed = 0;

    static InstanceSpec defaults(int n, std::uint64_t seed = 0) {
        InstanceSpec s;
        s.n = n;
        s.seed = seed;
        s.coeff_grid = {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
                        Rational(1, 2), Rational(1), Rational(2)};
        s.mu_grid = {Rational(1), Rational(-1), Rational(2),
                     Rational(1, 2), Rational(-2), Rational(-1, 2)};
        return s;
    }
};

namespace detail {

template <class Rng>
double unit_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <Scalar S, class Rng>
S random_coeff(const InstanceSpec& spec, Rng& rng) {
    if constexpr (scalar_traits<S>::is_exact) {
        return S::from_rational(spec.coeff_grid[rng() % spec.coeff_grid.size()]);
    } else {
        return S{2.0 * unit_double(rng) - 1.0, 2.0 * unit_double(rng) - 1.0};
    }
}

template <Scalar S, class Rng>
S random_nonzero_coeff(const InstanceSpec& spec, Rng& rng) {
    for (;;) {
        S c = random_coeff<S>(spec, rng);
        if (!c.is_zero()) return c;
    }
}

}  // namespace detail

/// μ with μ_ii = 1 and μ_ji = μ_ij⁻¹; exact backend samples the grid,
/// complex backend samples unit-modulus values.
template <Scalar S, class Rng>
MuParams<S> random_mu(const InstanceSpec& spec, Rng& rng) {
    MuParams<S> mu = MuParams<S>::commutative(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) {
            S v;
            if constexpr (scalar_traits<S>::is_exact) {
                v = S::from_rational(spec.mu_grid[rng() % spec.mu_grid.size()]);
            } else {
                const double theta = 2.0 * 3.14159265358979323846 * detail::unit_double(rng);
                v = S{std::cos(theta), std::sin(theta)};
            }
            mu.at(i, j) = v;
            mu.at(j, i) = v.inverse();
        }
    return mu;
}

template <Scalar S, class Rng>
LinearForm<S> random_linear(const InstanceSpec& spec, Rng& rng, bool nonzero = true) {
    for (;;) {
        LinearForm<S> l(spec.n);
        for (int i = 0; i < spec.n; ++i) l.coeff(i) = detail::random_coeff<S>(spec, rng);
        if (!nonzero || !l.is_zero()) return l;
    }
}

/// The three factored shapes the rank-2 theory distinguishes: both-orders
/// products missing z1 in one factor, and the leading-coefficient shape
/// with prefactor a11⁻¹.
enum class ProductShape { left_full, right_full, leading };

template <Scalar S>
struct GeneratedInstance {
    QuadraticForm<S> q;
    MuParams<S> mu;
    std::vector<LinearForm<S>> secret;  // generating factors (ground truth)
    S prefactor = S::one();
};

template <Scalar S, class Rng>
GeneratedInstance<S> random_square(const InstanceSpec& spec, Rng& rng) {
    const MuParams<S> mu = random_mu<S>(spec, rng);
    const LinearForm<S> l = random_linear<S>(spec, rng);
    return {multiply_linear(l, l, mu), mu, {l}, S::one()};
}

template <Scalar S, class Rng>
GeneratedInstance<S> random_product(const InstanceSpec& spec, Rng& rng, ProductShape shape) {
    const MuParams<S> mu = random_mu<S>(spec, rng);
    const int n = spec.n;
    LinearForm<S> l1(n), l2(n);
    S pre = S::one();
    switch (shape) {
        case ProductShape::left_full:
            l1 = random_linear<S>(spec, rng);
            l2 = random_linear<S>(spec, rng);
            l2.coeff(0) = S::zero();
            while (l2.is_zero()) {
                l2 = random_linear<S>(spec, rng);
                l2.coeff(0) = S::zero();
            }
            break;
        case ProductShape::right_full:
            l1 = random_linear<S>(spec, rng);
            l1.coeff(0) = S::zero();
            while (l1.is_zero()) {
                l1 = random_linear<S>(spec, rng);
                l1.coeff(0) = S::zero();
            }
            l2 = random_linear<S>(spec, rng);
            break;
        case ProductShape::leading: {
            const S lead = detail::random_nonzero_coeff<S>(spec, rng);
            l1 = random_linear<S>(spec, rng, false);
            l2 = random_linear<S>(spec, rng, false);
            l1.coeff(0) = lead;
            l2.coeff(0) = lead;
            pre = lead.inverse();
            break;
        }
    }
    QuadraticForm<S> q = scale(multiply_linear(l1, l2, mu), pre);
    return {std::move(q), mu, {l1, l2}, pre};
}

template <Scalar S, class Rng>
GeneratedInstance<S> random_generic(const InstanceSpec& spec, Rng& rng) {
    const MuParams<S> mu = random_mu<S>(spec, rng);
    QuadraticForm<S> q(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int j = i; j < spec.n; ++j) q.coeff(i, j) = detail::random_coeff<S>(spec, rng);
    return {std::move(q), mu, {}, S::one()};
}

// ---------------------------------------------------------------------------
// Brute-force factor search (the independent oracle).
// ---------------------------------------------------------------------------

/// Thrown when the configured grid would exceed the candidate cap.
class GridTooLarge : public std::length_error {
public:
    explicit GridTooLarge(const std::string& what) : std::length_error(what) {}
};

/**
 * Exhaustive search for Q = λ·L1·L2 with both factors' coefficients in the
 * grid, first nonzero coefficient of each factor normalized to 1, and the
 * scalar λ solved from the first nonzero coefficient of Q. Exact backend
 * only; completely independent of the closed-form D-function route.
 */
template <Scalar S>
std::optional<Factorization<S>> grid_search_factor(const QuadraticForm<S>& q,
                                                   const MuParams<S>& mu,
                                                   const std::vector<Rational>& grid,
                                                   std::uint64_t cap = 10'000'000) {
    static_assert(scalar_traits<S>::is_exact, "grid_search_factor needs the exact backend");
    const int n = q.n();
    require_dim(n, mu.n(), "grid_search_factor");
    if (q.is_zero()) return std::nullopt;

    // first nonzero coefficient of q in (i <= j) lexicographic order
    int ki = -1, kj = -1;
    for (int i = 0; i < n && ki < 0; ++i)
        for (int j = i; j < n; ++j)
            if (!q.coeff(i, j).is_zero()) {
                ki = i;
                kj = j;
                break;
            }

    // normalized candidates: leading 1 at position p, grid values after it
    std::vector<LinearForm<S>> cands;
    std::vector<S> gvals;
    gvals.reserve(grid.size());
    for (const auto& g : grid) gvals.push_back(S::from_rational(g));
    std::uint64_t count = 0;
    for (int p = 0; p < n; ++p) {
        std::uint64_t c = 1;
        for (int t = p + 1; t < n; ++t) c *= gvals.size();
        count += c;
    }
    if (count > 3'000'000'000ull || count * count > cap)
        throw GridTooLarge("grid_search_factor: " + std::to_string(count) +
                           "^2 candidate pairs exceed the cap");
    for (int p = 0; p < n; ++p) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(n - p - 1), 0);
        for (;;) {
            LinearForm<S> l(n);
            l.coeff(p) = S::one();
            for (int t = p + 1; t < n; ++t) l.coeff(t) = gvals[pick[static_cast<std::size_t>(t - p - 1)]];
            cands.push_back(l);
            int i = n - p - 2;
            while (i >= 0 && ++pick[static_cast<std::size_t>(i)] >= gvals.size()) pick[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }

    // fast path: rational data that fits machine words runs the pair loop on
    // unnormalized int64 fractions with 128-bit cross-multiplied comparisons
    if constexpr (std::is_same_v<S, QuadExt>) {
        struct Frac {
            std::int64_t num = 0, den = 1;
        };
        bool small = true;
        auto to_frac = [&small](const QuadExt& v) -> Frac {
            if (!v.is_rational()) {
                small = false;
                return {};
            }
            const Rational r = v.as_rational();
            // bound keeps every cross-multiplied comparison inside the
            // int64/__int128 headroom worked out for this loop
            constexpr std::int64_t kLimit = 100;
            if (r.numerator() > kLimit || r.numerator() < -kLimit || r.denominator() > kLimit) {
                small = false;
                return {};
            }
            return {r.numerator().convert_to<std::int64_t>(),
                    r.denominator().convert_to<std::int64_t>()};
        };
        std::vector<std::array<Frac, 4>> fc(cands.size());
        for (std::size_t c = 0; c < cands.size(); ++c)
            for (int i = 0; i < n; ++i) fc[c][static_cast<std::size_t>(i)] = to_frac(cands[c].coeff(i));
        std::array<Frac, 16> fmu{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) fmu[static_cast<std::size_t>(i * 4 + j)] = to_frac(mu.mu(i, j));
        std::array<Frac, 10> fq{};
        {
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) fq[static_cast<std::size_t>(k++)] = to_frac(q.coeff(i, j));
        }
        if (small) {
            auto flat = [n](int i, int j) { return i * n - i * (i + 1) / 2 + j; };
            auto mul = [](const Frac& a, const Frac& b) -> Frac {
                return {a.num * b.num, a.den * b.den};
            };
            auto addf = [](const Frac& a, const Frac& b) -> Frac {
                return {a.num * b.den + b.num * a.den, a.den * b.den};
            };
            auto prod_coeff = [&](const std::array<Frac, 4>& a, const std::array<Frac, 4>& b,
                                  int i, int j) -> Frac {
                if (i == j) return mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
                return addf(mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]),
                            mul(fmu[static_cast<std::size_t>(i * 4 + j)],
                                mul(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(i)])));
            };
            const Frac qk = fq[static_cast<std::size_t>(flat(ki, kj))];
            for (std::size_t c1 = 0; c1 < cands.size(); ++c1)
                for (std::size_t c2 = 0; c2 < cands.size(); ++c2) {
                    const Frac ck = prod_coeff(fc[c1], fc[c2], ki, kj);
                    if (ck.num == 0) continue;
                    // lambda = qk / ck; match: lambda * E_ij == q_ij, compared
                    // by 128-bit cross multiplication
                    const Frac lambda{qk.num * ck.den, qk.den * ck.num};
                    bool match = true;
                    for (int i = 0; i < n && match; ++i)
                        for (int j = i; j < n && match; ++j) {
                            const Frac e = prod_coeff(fc[c1], fc[c2], i, j);
                            const Frac& qq = fq[static_cast<std::size_t>(flat(i, j))];
                            const __int128 lhs =
                                static_cast<__int128>(lambda.num) * e.num * qq.den;
                            const __int128 rhs = static_cast<__int128>(qq.num) * lambda.den * e.den;
                            match = lhs == rhs;
                        }
                    if (match) {
                        Factorization<S> f;
                        f.kind = FactorKind::product;
                        f.factors = {cands[c1], cands[c2]};
                        f.prefactor =
                            S::from_rational(Rational(BigInt(lambda.num), BigInt(lambda.den)));
                        f.provenance = "oracle.grid";
                        f.verified = verify_factorization(q, f, mu);
                        return f;
                    }
                }
            return std::nullopt;
        }
    }

    auto coeff_of_product = [&](const LinearForm<S>& l1, const LinearForm<S>& l2, int i, int j) {
        if (i == j) return l1.coeff(i) * l2.coeff(i);
        return l1.coeff(i) * l2.coeff(j) + mu.mu(i, j) * (l1.coeff(j) * l2.coeff(i));
    };

    for (const auto& l1 : cands)
        for (const auto& l2 : cands) {
            const S ck = coeff_of_product(l1, l2, ki, kj);
            if (ck.is_zero()) continue;
            const S lambda = q.coeff(ki, kj) * ck.inverse();
            bool match = true;
            for (int i = 0; i < n && match; ++i)
                for (int j = i; j < n && match; ++j)
                    match = scalar_eq(lambda * coeff_of_product(l1, l2, i, j), q.coeff(i, j));
            if (match) {
                Factorization<S> f;
                f.kind = FactorKind::product;
                f.factors = {l1, l2};
                f.prefactor = lambda;
                f.provenance = "oracle.grid";
                f.verified = verify_factorization(q, f, mu);
                return f;
            }
        }
    return std::nullopt;
}

/**
 * Confirms that a classifier-vs-factor divergence is a genuine gap in the
 * closed-form criteria rather than a construction bug: the classifier must
 * report rank <= 2, every construction must fail, and the independent grid
 * search must find nothing either. Exact backend only.
 */
template <Scalar S>
bool confirm_criteria_gap(const QuadraticForm<S>& q, const MuParams<S>& mu,
                        const std::vector<Rational>& grid) {
    static_assert(scalar_traits<S>::is_exact);
    const RankReport<S> r = q.n() == 3 ? murank3(q, mu) : murank4(q, mu);
    if (r.rank == MuRank::at_least_three || r.rank == MuRank::zero) return false;
    if (factor_form(q, mu).has_value()) return false;
    return !grid_search_factor(q, mu, grid).has_value();
}

// ---------------------------------------------------------------------------
// Differential suite.
// ---------------------------------------------------------------------------

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::string kind;
    std::string message;
    std::string mu_text;
    std::string form_text;
};

struct SuiteReport {
    std::uint64_t trials = 0;
    std::map<std::string, std::uint64_t> kind_counts;
    std::map<std::string, std::uint64_t> verdict_counts;
    std::vector<TrialRecord> failures;         // ground-truth violations
    std::vector<TrialRecord> inconsistencies;  // classifier vs factor divergences

    [[nodiscard]] bool ok() const { return failures.empty() && inconsistencies.empty(); }
};

template <Scalar S>
std::string describe_mu(const MuParams<S>& mu) {
    std::string out;
    for (int i = 0; i < mu.n(); ++i)
        for (int j = i + 1; j < mu.n(); ++j) {
            if (!out.empty()) out += ",";
            out += "mu" + std::to_string(i + 1) + std::to_string(j + 1) + "=" +
                   mu.mu(i, j).to_string();
        }
    return out;
}

inline const char* trial_kind_name(std::uint64_t k) {
    switch (k % 5) {
        case 0: return "square";
        case 1: return "product_left";
        case 2: return "product_right";
        case 3: return "product_leading";
        default: return "generic";
    }
}

/**
 * Differential ground-truth run: per trial, generate a square / product /
 * generic instance, classify it, refactor it, and cross-check every verdict
 * against the hidden factors (and optionally the grid oracle). Any
 * divergence is recorded with full reproduction data.
 */
template <Scalar S>
SuiteReport differential_suite(const InstanceSpec& spec, std::uint64_t trials,
                               bool with_grid_oracle = false) {
    SuiteReport report;
    report.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = mix_seed(spec.seed, t);
        std::mt19937_64 rng(trial_seed);
        const std::string kind = trial_kind_name(t);
        report.kind_counts[kind]++;

        GeneratedInstance<S> inst = [&] {
            switch (t % 5) {
                case 0: return random_square<S>(spec, rng);
                case 1: return random_product<S>(spec, rng, ProductShape::left_full);
                case 2: return random_product<S>(spec, rng, ProductShape::right_full);
                case 3: return random_product<S>(spec, rng, ProductShape::leading);
                default: return random_generic<S>(spec, rng);
            }
        }();

        const RankReport<S> rank =
            spec.n == 3 ? murank3(inst.q, inst.mu) : murank4(inst.q, inst.mu);
        report.verdict_counts["rank " + rank_text(rank.rank, spec.n)]++;

        auto record = [&](std::vector<TrialRecord>& sink, const std::string& message) {
            sink.push_back({t, trial_seed, kind, message, describe_mu(inst.mu), render(inst.q)});
        };

        const bool is_square_kind = t % 5 == 0;
        const bool is_product_kind = t % 5 >= 1 && t % 5 <= 3;

        if (is_square_kind) {
            if (rank.rank != MuRank::one)
                record(report.failures,
                       "square instance classified rank " + rank_text(rank.rank, spec.n));
            const auto f = factor_square(inst.q, inst.mu);
            if (!f || !f->verified)
                record(report.failures, "square instance not refactored as a square");
        } else if (is_product_kind) {
            if (rank.rank != MuRank::one && rank.rank != MuRank::two)
                record(report.failures,
                       "product instance classified rank " + rank_text(rank.rank, spec.n));
            const auto f = factor_product(inst.q, inst.mu);
            if (!f || !f->verified)
                record(report.inconsistencies, "product instance not refactored");
        } else {
            const auto f = factor_form(inst.q, inst.mu);
            const bool low = rank.rank == MuRank::zero || rank.rank == MuRank::one ||
                             rank.rank == MuRank::two;
            if (low && !f) {
                std::string message = "classifier reports rank " + rank_text(rank.rank, spec.n) +
                                      " but no construction verifies";
                if constexpr (scalar_traits<S>::is_exact) {
                    if (confirm_criteria_gap(inst.q, inst.mu, spec.coeff_grid))
                        message += " [confirmed criteria gap: independent search finds no "
                                   "factorization either]";
                }
                record(report.inconsistencies, message);
            }
            if (!low && f)
                record(report.inconsistencies,
                       "verified factorization exists but classifier reports rank " +
                           rank_text(rank.rank, spec.n));
            if constexpr (scalar_traits<S>::is_exact) {
                if (with_grid_oracle) {
                    const auto g = grid_search_factor(inst.q, inst.mu, spec.coeff_grid);
                    if (g && !low)
                        record(report.inconsistencies,
                               "grid oracle factored an instance the classifier ranked " +
                                   rank_text(rank.rank, spec.n));
                }
            }
        }
    }
    return report;
}

}  // namespace murank
