#pragma once

#include "murank/skewring.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace murank {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t pos)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + message),
          pos_(pos) {}
    [[nodiscard]] std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// One parsed additive term, recorded as written (before normal ordering).
struct FormTerm {
    Rational coeff = Rational(1);  // sign applied
    int degree = 0;                // 0, 1 or 2
    int gen1 = -1, gen2 = -1;      // 0-based generator indices, in written order
    std::size_t pos = 0;           // offset of the term in the input
};
using FormAST = std::vector<FormTerm>;

namespace detail {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[nodiscard]] bool eof() {
        skip_ws();
        return i >= s.size();
    }
    [[nodiscard]] char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
};

inline BigInt parse_digits(Cursor& c) {
    if (!std::isdigit(static_cast<unsigned char>(c.peek())))
        throw ParseError("expected digits", c.i);
    BigInt v = 0;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        v = v * 10 + (c.s[c.i] - '0');
        ++c.i;
    }
    return v;
}

/// digits ['/' digits]; the sign is handled by the caller.
inline Rational parse_unsigned_rational(Cursor& c) {
    const BigInt num = parse_digits(c);
    if (c.i < c.s.size() && c.s[c.i] == '/') {
        ++c.i;
        const std::size_t dpos = c.i;
        const BigInt den = parse_digits(c);
        if (den == 0) throw ParseError("zero denominator", dpos);
        return Rational(num, den);
    }
    return Rational(num, 1);
}

inline int parse_generator_index(Cursor& c, int n) {
    const std::size_t pos = c.i;
    const BigInt idx = parse_digits(c);
    if (idx < 1 || idx > n)
        throw ParseError("generator index out of range 1.." + std::to_string(n), pos);
    return static_cast<int>(idx) - 1;
}

}  // namespace detail

/**
 * Parses the textual form grammar
 *   form     := ['-'] term (('+'|'-') term)*
 *   term     := [rational ['*']] monomial | rational
 *   monomial := 'z'idx ('^2' | ['*' 'z'idx])
 *   rational := digits ['/' digits]
 * with insignificant whitespace, into a term list. Degree validation
 * happens in ast_to_form.
 */
inline FormAST parse_form_ast(std::string_view text, int n) {
    detail::Cursor c{text};
    if (c.eof()) throw ParseError("empty form", 0);
    FormAST ast;
    bool neg = c.accept('-');
    for (;;) {
        c.skip_ws();
        FormTerm term;
        term.pos = c.i;
        bool have_coeff = false, consumed_star = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            term.coeff = detail::parse_unsigned_rational(c);
            have_coeff = true;
            consumed_star = c.accept('*');
        }
        if (c.peek() == 'z') {
            ++c.i;
            term.gen1 = detail::parse_generator_index(c, n);
            term.degree = 1;
            if (c.peek() == '^') {
                ++c.i;
                if (!c.accept('2')) throw ParseError("only exponent 2 is allowed", c.i);
                term.gen2 = term.gen1;
                term.degree = 2;
            } else if (c.peek() == '*') {
                ++c.i;
                if (!c.accept('z')) throw ParseError("expected generator after '*'", c.i);
                term.gen2 = detail::parse_generator_index(c, n);
                term.degree = 2;
            }
        } else if (consumed_star) {
            throw ParseError("expected monomial after '*'", c.i);
        } else if (!have_coeff) {
            throw ParseError("expected coefficient or generator", c.i);
        }
        if (neg) term.coeff = -term.coeff;
        ast.push_back(term);
        if (c.eof()) break;
        if (c.accept('+'))
            neg = false;
        else if (c.accept('-'))
            neg = true;
        else
            throw ParseError("expected '+' or '-'", c.i);
        if (c.eof()) throw ParseError("dangling operator", c.i);
    }
    return ast;
}

/**
 * Materializes a term list into a quadratic form: terms of degree other
 * than 2 are rejected, and written products z_j·z_i with j > i are
 * normal-ordered through μ.
 */
template <Scalar S>
QuadraticForm<S> ast_to_form(const FormAST& ast, int n, const MuParams<S>& mu) {
    require_dim(n, mu.n(), "ast_to_form");
    QuadraticForm<S> q(n);
    for (const FormTerm& t : ast) {
        if (t.degree != 2)
            throw ParseError("term of degree " + std::to_string(t.degree) +
                                 " (only degree-2 terms are allowed)",
                             t.pos);
        S c = S::from_rational(t.coeff);
        int i = t.gen1, j = t.gen2;
        if (i > j) {
            std::swap(i, j);
            c = mu.mu(i, j) * c;  // z_j z_i = mu_ij z_i z_j
        }
        q.coeff(i, j) = q.coeff(i, j) + c;
    }
    return q;
}

template <Scalar S>
QuadraticForm<S> parse_form(std::string_view text, int n, const MuParams<S>& mu) {
    return ast_to_form(parse_form_ast(text, n), n, mu);
}

/**
 * Parses the upper-triangle μ syntax "mu12=2, mu13=1/2, ..." (empty input
 * gives the all-ones commutative μ); the lower triangle is filled with
 * reciprocals and the result validated.
 */
template <Scalar S>
MuParams<S> parse_mu(std::string_view text, int n) {
    std::map<std::pair<int, int>, S> upper;
    detail::Cursor c{text};
    if (!c.eof()) {
        for (;;) {
            c.skip_ws();
            const std::size_t pos = c.i;
            if (!(c.accept('m') && c.accept('u'))) throw ParseError("expected 'mu'", pos);
            if (!std::isdigit(static_cast<unsigned char>(c.peek())))
                throw ParseError("expected index digits after 'mu'", c.i);
            const int i = c.s[c.i++] - '0';
            if (!std::isdigit(static_cast<unsigned char>(c.peek())))
                throw ParseError("expected two index digits after 'mu'", c.i);
            const int j = c.s[c.i++] - '0';
            if (!(1 <= i && i < j && j <= n))
                throw ParseError("mu indices must satisfy 1 <= i < j <= " + std::to_string(n),
                                 pos);
            if (!c.accept('=')) throw ParseError("expected '='", c.i);
            const bool neg = c.accept('-');
            c.skip_ws();
            Rational v = detail::parse_unsigned_rational(c);
            if (neg) v = -v;
            if (v.is_zero()) throw MuInvariantViolation("mu entries must be nonzero");
            if (!upper.emplace(std::make_pair(i - 1, j - 1), S::from_rational(v)).second)
                throw ParseError("duplicate mu entry", pos);
            if (c.eof()) break;
            if (!c.accept(',')) throw ParseError("expected ','", c.i);
            if (c.eof()) throw ParseError("dangling ','", c.i);
        }
    }
    MuParams<S> mu = MuParams<S>::from_upper(n, upper);
    mu.validate();
    return mu;
}

/// Parses a comma-separated list of n rational coefficients into a linear form.
template <Scalar S>
LinearForm<S> parse_linear(std::string_view text, int n) {
    LinearForm<S> l(n);
    detail::Cursor c{text};
    for (int k = 0; k < n; ++k) {
        c.skip_ws();
        const bool neg = c.accept('-');
        c.skip_ws();
        Rational v = detail::parse_unsigned_rational(c);
        if (neg) v = -v;
        l.coeff(k) = S::from_rational(v);
        if (k + 1 < n && !c.accept(','))
            throw ParseError("expected ',' between coefficients", c.i);
    }
    if (!c.eof()) throw ParseError("trailing input after coefficients", c.i);
    return l;
}

}  // namespace murank
