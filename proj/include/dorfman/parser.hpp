#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dorfman/polynomial.hpp"

namespace dorfman {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + std::move(msg)),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Recursive-descent parser for the chart expression grammar:
///
///   poly     := term (('+'|'-') term)*
///   term     := rational? ('*'? factor)*
///   factor   := ident ('^' posint)?
///   ident    := ('x'|'p'|'xi'|'pi'|'xs') index
///   rational := integer ('/' posint)?
///
/// Whitespace insensitive; a leading sign on the first term is accepted.
/// Results are in normal form, so print/parse round-trip exactly.
class ExpressionParser {
public:
    explicit ExpressionParser(ChartPtr chart) : chart_(std::move(chart)) {}

    SuperPolynomial parse(std::string_view text) const {
        Cursor cur{text, 0};
        SuperPolynomial result(chart_);
        skip_ws(cur);
        bool negate = false;
        if (peek(cur) == '+' || peek(cur) == '-') {
            negate = peek(cur) == '-';
            ++cur.pos;
        }
        result += parse_term(cur) * Rational(negate ? -1 : 1);
        skip_ws(cur);
        while (cur.pos < cur.text.size()) {
            const char op = peek(cur);
            if (op != '+' && op != '-') fail(cur, "expected '+' or '-'");
            ++cur.pos;
            result += parse_term(cur) * Rational(op == '-' ? -1 : 1);
            skip_ws(cur);
        }
        return result;
    }

private:
    struct Cursor {
        std::string_view text;
        std::size_t pos;
    };

    static char peek(const Cursor& c) { return c.pos < c.text.size() ? c.text[c.pos] : '\0'; }

    static void skip_ws(Cursor& c) {
        while (c.pos < c.text.size() && std::isspace(static_cast<unsigned char>(c.text[c.pos])))
            ++c.pos;
    }

    [[noreturn]] static void fail(const Cursor& c, const std::string& msg) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < c.pos && i < c.text.size(); ++i) {
            if (c.text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    SuperPolynomial parse_term(Cursor& cur) const {
        skip_ws(cur);
        if (cur.pos >= cur.text.size()) fail(cur, "expected a term");
        SuperPolynomial term = SuperPolynomial::constant(chart_, 1);
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(peek(cur)))) {
            term *= parse_rational(cur);
            saw_factor = true;
        }
        for (;;) {
            skip_ws(cur);
            if (peek(cur) == '*') {
                ++cur.pos;
                skip_ws(cur);
            }
            if (!std::isalpha(static_cast<unsigned char>(peek(cur)))) break;
            term = term * parse_factor(cur);
            saw_factor = true;
        }
        if (!saw_factor) fail(cur, "expected a rational or an identifier");
        return term;
    }

    Rational parse_rational(Cursor& cur) const {
        Integer num = parse_integer(cur);
        skip_ws(cur);
        if (peek(cur) == '/') {
            ++cur.pos;
            skip_ws(cur);
            if (!std::isdigit(static_cast<unsigned char>(peek(cur))))
                fail(cur, "expected a denominator");
            Integer den = parse_integer(cur);
            if (den == 0) fail(cur, "zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    Integer parse_integer(Cursor& cur) const {
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek(cur)))) digits += cur.text[cur.pos++];
        if (digits.empty()) fail(cur, "expected digits");
        return Integer(digits);
    }

    SuperPolynomial parse_factor(Cursor& cur) const {
        const Cursor at = cur;
        std::string letters;
        while (std::isalpha(static_cast<unsigned char>(peek(cur)))) letters += cur.text[cur.pos++];
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek(cur)))) digits += cur.text[cur.pos++];
        if (digits.empty()) fail(at, "identifier '" + letters + "' lacks a coordinate index");
        const std::string name = letters + digits;
        const auto pos = chart_->find(name);
        if (!pos) fail(at, "unknown identifier '" + name + "' on this chart");
        unsigned exponent = 1;
        skip_ws(cur);
        if (peek(cur) == '^') {
            ++cur.pos;
            skip_ws(cur);
            if (!std::isdigit(static_cast<unsigned char>(peek(cur))))
                fail(cur, "expected a positive exponent");
            const Integer e = parse_integer(cur);
            if (e < 1) fail(cur, "expected a positive exponent");
            if (chart_->coord(*pos).parity == Parity::odd && e > 1)
                fail(at, "odd coordinate '" + name + "' squared");
            exponent = static_cast<unsigned>(e);
        }
        Monomial m(chart_->size());
        m.set_exponent(*pos, exponent);
        SuperPolynomial f(chart_);
        f.add_term(m, 1);
        return f;
    }

    ChartPtr chart_;
};

inline SuperPolynomial parse_expression(const ChartPtr& chart, std::string_view text) {
    return ExpressionParser(chart).parse(text);
}

}  // namespace dorfman
