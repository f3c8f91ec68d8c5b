#pragma once

#include "murank/json_io.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace murank {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Resolved command-line configuration. Exit codes of run():
 *   0 success, 1 parse/validation error, 2 μ-invariant violation,
 *   3 internal inconsistency detected, 4 I/O error.
 */
struct CliConfig {
    enum class Command { classify, factor, minors, expand, verify, fuzz };
    enum class Backend { exact, complex_fp };

    Command command = Command::classify;
    Backend backend = Backend::exact;
    int n = 4;
    std::string mu_text;                    // "mu12=2,..." (empty: commutative)
    std::optional<std::string> form_text;   // inline text; "-" reads stdin
    std::optional<std::string> file;        // JSON bundle; "-" reads stdin
    std::optional<std::string> l1_text, l2_text;  // linear forms for expand
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::uint64_t trials = 100;
    bool json_output = false;
};

namespace detail {

inline std::string read_stream(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_file(const std::string& path, std::istream& in) {
    if (path == "-") return read_stream(in);
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    return read_stream(f);
}

template <Scalar S>
struct ProblemInput {
    int n = 4;
    MuParams<S> mu{4};
    std::optional<QuadraticForm<S>> form;
    std::optional<json> bundle;
};

template <Scalar S>
ProblemInput<S> load_input(const CliConfig& cfg, std::istream& in) {
    ProblemInput<S> p;
    p.n = cfg.n;
    std::optional<json> bundle;
    if (cfg.file) {
        bundle = json::parse(read_file(*cfg.file, in));
        if (bundle->contains("n")) p.n = bundle->at("n").get<int>();
    }
    if (p.n != 3 && p.n != 4) throw ParseError("n must be 3 or 4", 0);
    if (bundle && bundle->contains("mu"))
        p.mu = mu_from_json<S>(*bundle, p.n);
    else
        p.mu = parse_mu<S>(cfg.mu_text, p.n);
    if (cfg.form_text) {
        const std::string text = *cfg.form_text == "-" ? read_stream(in) : *cfg.form_text;
        p.form = parse_form<S>(text, p.n, p.mu);
    } else if (bundle && bundle->contains("form")) {
        p.form = parse_form<S>(bundle->at("form").get<std::string>(), p.n, p.mu);
    } else if (bundle && bundle->contains("c")) {
        p.form = form_from_json<S>(*bundle);
    }
    p.bundle = std::move(bundle);
    return p;
}

template <Scalar S>
json bundle_header(const ProblemInput<S>& p) {
    json out{{"n", p.n},
             {"backend", scalar_traits<S>::name},
             {"mu", to_json(p.mu).at("mu")}};
    if (p.form) out["c"] = to_json(*p.form).at("c");
    return out;
}

template <Scalar S>
const QuadraticForm<S>& require_form(const ProblemInput<S>& p) {
    if (!p.form) throw ParseError("no quadratic form given (use --form or --file)", 0);
    return *p.form;
}

template <Scalar S>
int run_classify(const CliConfig& cfg, const ProblemInput<S>& p, std::ostream& out) {
    const auto& q = require_form(p);
    const RankReport<S> report = p.n == 3 ? murank3(q, p.mu) : murank4(q, p.mu);
    if (cfg.json_output) {
        json j = bundle_header(p);
        j["command"] = "classify";
        j["report"] = to_json(report);
        out << j.dump(2) << "\n";
    } else {
        out << "mu-rank: " << rank_text(report.rank, report.n) << "\n";
        if (report.normalized) out << "normalized: leading coefficient rescaled to 1\n";
        if (report.witness_signs)
            out << "witness signs (X,Y,Z): " << report.witness_signs->to_string() << "\n";
        for (const auto& [i, v] : report.d_values)
            out << "D" << i << " = " << v.to_string() << "\n";
    }
    return 0;
}

template <Scalar S>
int run_minors(const CliConfig& cfg, const ProblemInput<S>& p, std::ostream& out) {
    const auto& q = require_form(p);
    const MuSymMatrix<S> m = matrix_from_form(q, p.mu);
    json d = json::object();
    std::vector<std::pair<int, std::string>> human;
    auto put = [&](int i, const S& v) {
        d[std::to_string(i)] = to_json(v);
        human.emplace_back(i, v.to_string());
    };
    if (p.n == 3) {
        const auto minors = minors3(m, p.mu);
        for (int i = 0; i < 6; ++i) put(i + 1, minors[static_cast<std::size_t>(i)]);
        put(7, dets3_d7(m, p.mu).value);
        const auto disc = discriminants3(m, p.mu);
        const auto rx = principal_root(disc[0]), ry = principal_root(disc[1]);
        put(8, dets3_d8(m, p.mu, rx.value, ry.value));
    } else {
        const auto minors = minors4(m, p.mu);
        for (int i = 0; i < 21; ++i) put(i + 1, minors[static_cast<std::size_t>(i)]);
        const auto dets = dets4_a11zero(m, p.mu);
        for (int i = 0; i < 3; ++i) put(22 + i, dets[static_cast<std::size_t>(i)].value);
        const auto disc = discriminants4(m, p.mu);
        const auto signed_dets = dets4_a11nonzero(m, p.mu, principal_root(disc[0]).value,
                                                  principal_root(disc[1]).value,
                                                  principal_root(disc[2]).value);
        for (int i = 0; i < 3; ++i) put(25 + i, signed_dets[static_cast<std::size_t>(i)]);
    }
    if (cfg.json_output) {
        json j = bundle_header(p);
        j["command"] = "minors";
        j["matrix"] = to_json(m, p.mu);
        j["d_values"] = d;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& [i, text] : human) out << "D" << i << " = " << text << "\n";
    }
    return 0;
}

template <Scalar S>
int run_factor(const CliConfig& cfg, const ProblemInput<S>& p, std::ostream& out,
               std::ostream& err) {
    const auto& q = require_form(p);
    const RankReport<S> report = p.n == 3 ? murank3(q, p.mu) : murank4(q, p.mu);
    const auto f = factor_form(q, p.mu);
    const bool low_rank = report.rank != MuRank::at_least_three;
    if (cfg.json_output) {
        json j = bundle_header(p);
        j["command"] = "factor";
        j["report"] = to_json(report);
        if (f) j["factorization"] = to_json(*f);
        out << j.dump(2) << "\n";
    } else if (f) {
        out << "kind: " << (f->kind == FactorKind::square ? "square" : "product") << "\n";
        out << "prefactor: " << f->prefactor.to_string() << "\n";
        if (f->kind == FactorKind::square) {
            out << "L = " << render(f->factors.front()) << "\n";
        } else {
            out << "L1 = " << render(f->factors.front()) << "\n";
            out << "L2 = " << render(f->factors.back()) << "\n";
        }
        out << "provenance: " << f->provenance << "\n";
    } else {
        out << "none\n";
    }
    if (low_rank != f.has_value()) {
        err << "internal inconsistency: classifier reports rank "
            << rank_text(report.rank, report.n) << " but "
            << (f ? "a factorization was found" : "no construction verifies") << "\n";
        return 3;
    }
    return 0;
}

template <Scalar S>
int run_expand(const CliConfig& cfg, const ProblemInput<S>& p, std::ostream& out) {
    if (!cfg.l1_text || !cfg.l2_text)
        throw ParseError("expand needs --l1 and --l2 (comma-separated coefficients)", 0);
    const auto l1 = parse_linear<S>(*cfg.l1_text, p.n);
    const auto l2 = parse_linear<S>(*cfg.l2_text, p.n);
    const auto q = multiply_linear(l1, l2, p.mu);
    if (cfg.json_output) {
        json j{{"n", p.n},
               {"backend", scalar_traits<S>::name},
               {"mu", to_json(p.mu).at("mu")},
               {"command", "expand"},
               {"l1", to_json(l1)},
               {"l2", to_json(l2)},
               {"c", to_json(q).at("c")},
               {"form", render(q)}};
        out << j.dump(2) << "\n";
    } else {
        out << render(q) << "\n";
    }
    return 0;
}

template <Scalar S>
int run_verify(const CliConfig& cfg, const ProblemInput<S>& p, std::ostream& out) {
    const auto& q = require_form(p);
    if (!p.bundle || !p.bundle->contains("factorization"))
        throw ParseError("verify needs a JSON bundle with a \"factorization\" (use --file)", 0);
    const auto f = factorization_from_json<S>(p.bundle->at("factorization"), p.n);
    const bool okay = verify_factorization(q, f, p.mu);
    if (cfg.json_output) {
        json j = bundle_header(p);
        j["command"] = "verify";
        j["verified"] = okay;
        out << j.dump(2) << "\n";
    } else {
        out << (okay ? "true" : "false") << "\n";
    }
    return 0;
}

template <Scalar S>
int run_fuzz(const CliConfig& cfg, std::ostream& out) {
    InstanceSpec spec = InstanceSpec::defaults(cfg.n, cfg.seed);
    const SuiteReport report = differential_suite<S>(spec, cfg.trials);
    if (cfg.json_output) {
        json j = to_json(report);
        j["command"] = "fuzz";
        j["backend"] = scalar_traits<S>::name;
        j["n"] = cfg.n;
        j["seed"] = cfg.seed;
        out << j.dump(2) << "\n";
    } else {
        out << "trials: " << report.trials << "\n";
        for (const auto& [k, v] : report.kind_counts) out << "  " << k << ": " << v << "\n";
        for (const auto& [k, v] : report.verdict_counts) out << "  " << k << ": " << v << "\n";
        out << "failures: " << report.failures.size()
            << ", inconsistencies: " << report.inconsistencies.size() << "\n";
        for (const auto& r : report.failures)
            out << "  FAILURE trial " << r.trial << " (" << r.kind << "): " << r.message
                << "\n    mu: " << r.mu_text << "\n    form: " << r.form_text << "\n";
        for (const auto& r : report.inconsistencies)
            out << "  INCONSISTENT trial " << r.trial << " (" << r.kind << "): " << r.message
                << "\n    mu: " << r.mu_text << "\n    form: " << r.form_text << "\n";
    }
    return report.ok() ? 0 : 3;
}

template <Scalar S>
int run_typed(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    if (cfg.command == CliConfig::Command::fuzz) return run_fuzz<S>(cfg, out);
    const ProblemInput<S> p = load_input<S>(cfg, in);
    switch (cfg.command) {
        case CliConfig::Command::classify: return run_classify<S>(cfg, p, out);
        case CliConfig::Command::minors: return run_minors<S>(cfg, p, out);
        case CliConfig::Command::factor: return run_factor<S>(cfg, p, out, err);
        case CliConfig::Command::expand: return run_expand<S>(cfg, p, out);
        case CliConfig::Command::verify: return run_verify<S>(cfg, p, out);
        case CliConfig::Command::fuzz: break;
    }
    return 0;
}

}  // namespace detail

/// Executes one command against the chosen backend, mapping every error
/// class onto the documented exit codes.
inline int run(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.backend == CliConfig::Backend::complex_fp) {
            ComplexF::tolerance() = cfg.tol;
            return detail::run_typed<ComplexF>(cfg, in, out, err);
        }
        return detail::run_typed<QuadExt>(cfg, in, out, err);
    } catch (const MuInvariantViolation& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: invalid JSON input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace murank
