#pragma once

#include "murank/factor.hpp"
#include "murank/musym.hpp"
#include "murank/oracle.hpp"
#include "murank/parser.hpp"

#include <json.hpp>

#include <string>

namespace murank {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars. Rationals travel as "p/q" strings, complex values as [re, im],
// extension elements as {"squares": {...}, "coords": {...}}.
// ---------------------------------------------------------------------------

inline json to_json(const Rational& r) { return r.to_string(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<std::int64_t>(j.get<std::int64_t>()));
    if (j.is_string()) {
        if (auto r = Rational::parse(j.get<std::string>())) return *r;
        throw ParseError("bad rational literal '" + j.get<std::string>() + "'", 0);
    }
    throw ParseError("expected a rational (integer or \"p/q\" string)", 0);
}

inline std::string core_name(const BigInt& core) { return "sqrt(" + core.str() + ")"; }

inline json to_json(const QuadExt& e) {
    if (e.is_rational()) return to_json(e.rational_part());
    json squares = json::object();
    for (const auto& c : e.cores()) squares[core_name(c)] = c.str();
    json coords = json::object();
    for (const auto& [mask, coeff] : e.coords()) {
        std::string key;
        for (std::size_t i = 0; i < e.cores().size(); ++i)
            if (mask & (QuadExt::Mask{1} << i)) {
                if (!key.empty()) key += "*";
                key += core_name(e.cores()[i]);
            }
        if (key.empty()) key = "1";
        coords[key] = to_json(coeff);
    }
    return json{{"squares", squares}, {"coords", coords}};
}

inline QuadExt quadext_from_json(const json& j) {
    if (!j.is_object()) return QuadExt::from_rational(rational_from_json(j));
    if (!j.contains("coords")) throw ParseError("extension element needs \"coords\"", 0);
    QuadExt out;
    for (const auto& [key, value] : j.at("coords").items()) {
        QuadExt term = QuadExt::from_rational(rational_from_json(value));
        if (key != "1") {
            std::size_t pos = 0;
            while (pos < key.size()) {
                const std::size_t star = key.find('*', pos);
                const std::string part =
                    key.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
                if (part.size() < 7 || part.substr(0, 5) != "sqrt(" || part.back() != ')')
                    throw ParseError("bad extension monomial '" + key + "'", 0);
                const auto r = Rational::parse(part.substr(5, part.size() - 6));
                if (!r || !r->is_integer()) throw ParseError("bad symbol '" + part + "'", 0);
                term = term * QuadExt::symbol(r->numerator());
                pos = star == std::string::npos ? key.size() : star + 1;
            }
        }
        out += term;
    }
    return out;
}

inline json to_json(const ComplexF& c) { return json::array({c.re(), c.im()}); }

inline ComplexF complexf_from_json(const json& j) {
    if (j.is_number()) return ComplexF(j.get<double>());
    if (j.is_string()) return ComplexF(rational_from_json(j).to_double());
    if (j.is_array() && j.size() == 2) return ComplexF(j[0].get<double>(), j[1].get<double>());
    throw ParseError("expected a complex number ([re, im] or number)", 0);
}

template <Scalar S>
S scalar_from_json(const json& j) {
    if constexpr (std::is_same_v<S, QuadExt>)
        return quadext_from_json(j);
    else
        return complexf_from_json(j);
}

// ---------------------------------------------------------------------------
// Core types.
// ---------------------------------------------------------------------------

template <Scalar S>
json to_json(const MuParams<S>& mu) {
    json rows = json::array();
    for (int i = 0; i < mu.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < mu.n(); ++j) row.push_back(to_json(mu.mu(i, j)));
        rows.push_back(row);
    }
    return json{{"n", mu.n()}, {"mu", rows}};
}

template <Scalar S>
MuParams<S> mu_from_json(const json& j, int expected_n = 0) {
    const json& rows = j.is_object() ? j.at("mu") : j;
    const int n = static_cast<int>(rows.size());
    if (expected_n && n != expected_n)
        throw ParseError("mu matrix size does not match n", 0);
    MuParams<S> mu(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw ParseError("mu matrix must be square", 0);
        for (int k = 0; k < n; ++k)
            mu.at(i, k) = scalar_from_json<S>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    }
    mu.validate();
    return mu;
}

template <Scalar S>
json to_json(const QuadraticForm<S>& q) {
    json c = json::object();
    for (int i = 0; i < q.n(); ++i)
        for (int j = i; j < q.n(); ++j)
            if (!q.coeff(i, j).is_zero())
                c[std::to_string(i + 1) + std::to_string(j + 1)] = to_json(q.coeff(i, j));
    return json{{"n", q.n()}, {"c", c}};
}

template <Scalar S>
QuadraticForm<S> form_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    if (n != 3 && n != 4) throw ParseError("n must be 3 or 4", 0);
    QuadraticForm<S> q(n);
    for (const auto& [key, value] : j.at("c").items()) {
        if (key.size() != 2 || key[0] < '1' || key[0] > '0' + n || key[1] < '1' ||
            key[1] > '0' + n)
            throw ParseError("bad coefficient key '" + key + "'", 0);
        const int a = key[0] - '1', b = key[1] - '1';
        if (a > b) throw ParseError("coefficient keys must have i <= j", 0);
        q.coeff(a, b) = scalar_from_json<S>(value);
    }
    return q;
}

template <Scalar S>
json to_json(const LinearForm<S>& l) {
    json arr = json::array();
    for (int i = 0; i < l.n(); ++i) arr.push_back(to_json(l.coeff(i)));
    return arr;
}

template <Scalar S>
LinearForm<S> linear_from_json(const json& j, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw ParseError("linear form must be an array of n coefficients", 0);
    LinearForm<S> l(n);
    for (int i = 0; i < n; ++i) l.coeff(i) = scalar_from_json<S>(j[static_cast<std::size_t>(i)]);
    return l;
}

/// μ-symmetric matrix with its defining μ: {"n", "mu", "a": {"11": ..., ...}}.
template <Scalar S>
json to_json(const MuSymMatrix<S>& m, const MuParams<S>& mu) {
    json a = json::object();
    for (int i = 0; i < m.n(); ++i)
        for (int j = i; j < m.n(); ++j)
            a[std::to_string(i + 1) + std::to_string(j + 1)] = to_json(m.a(i, j));
    json out = to_json(mu);
    out["a"] = a;
    return out;
}

inline json to_json(const SignChoice& s) { return s.to_string(); }

inline SignChoice signs_from_json(const json& j) {
    const std::string s = j.get<std::string>();
    if (s.size() != 3 || s.find_first_not_of("+-") != std::string::npos)
        throw ParseError("bad sign choice '" + s + "'", 0);
    return SignChoice{s[0] == '+' ? +1 : -1, s[1] == '+' ? +1 : -1, s[2] == '+' ? +1 : -1};
}

template <Scalar S>
json to_json(const RankReport<S>& r) {
    json d = json::object();
    for (const auto& [i, v] : r.d_values) d[std::to_string(i)] = to_json(v);
    json out{{"n", r.n},
             {"rank", rank_text(r.rank, r.n)},
             {"d_values", d},
             {"normalized", r.normalized}};
    if (r.witness_signs) out["witness_signs"] = to_json(*r.witness_signs);
    return out;
}

template <Scalar S>
json to_json(const Factorization<S>& f) {
    json factors = json::array();
    for (const auto& l : f.factors) factors.push_back(to_json(l));
    json out{{"kind", f.kind == FactorKind::square ? "square" : "product"},
             {"prefactor", to_json(f.prefactor)},
             {"factors", factors},
             {"provenance", f.provenance},
             {"verified", f.verified}};
    if (f.signs) out["signs"] = to_json(*f.signs);
    return out;
}

template <Scalar S>
Factorization<S> factorization_from_json(const json& j, int n) {
    Factorization<S> f;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "square" && kind != "product")
        throw ParseError("factorization kind must be \"square\" or \"product\"", 0);
    f.kind = kind == "square" ? FactorKind::square : FactorKind::product;
    f.prefactor = j.contains("prefactor") ? scalar_from_json<S>(j.at("prefactor")) : S::one();
    for (const auto& l : j.at("factors")) f.factors.push_back(linear_from_json<S>(l, n));
    if (f.factors.empty() || f.factors.size() > 2)
        throw ParseError("factorization needs one or two factors", 0);
    if (j.contains("provenance")) f.provenance = j.at("provenance").get<std::string>();
    if (j.contains("signs")) f.signs = signs_from_json(j.at("signs"));
    return f;
}

inline json to_json(const TrialRecord& r) {
    return json{{"trial", r.trial}, {"seed", r.seed},         {"kind", r.kind},
                {"message", r.message}, {"mu", r.mu_text}, {"form", r.form_text}};
}

inline json to_json(const SuiteReport& r) {
    json failures = json::array(), inconsistencies = json::array();
    for (const auto& f : r.failures) failures.push_back(to_json(f));
    for (const auto& f : r.inconsistencies) inconsistencies.push_back(to_json(f));
    return json{{"trials", r.trials},
                {"kind_counts", r.kind_counts},
                {"verdict_counts", r.verdict_counts},
                {"failures", failures},
                {"inconsistencies", inconsistencies},
                {"ok", r.ok()}};
}

}  // namespace murank
