#pragma once

/**
 * @file expr.hpp
 * @brief Polynomial expressions in named generators: `2*x^3*y - y*x + 1`.
 *
 * Products keep their written order so the same expression can be evaluated
 * in associative, commutative and graded-commutative algebras alike.
 */

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fpell/error.hpp"

namespace fpell {

struct ExprFactor {
    std::string name;
    unsigned exponent = 1;
    int column = 0;
};

struct ExprTerm {
    long long coeff = 1;
    std::vector<ExprFactor> factors;  ///< empty means the constant term
};

struct Expr {
    std::vector<ExprTerm> terms;  ///< empty means zero
};

namespace detail {

class ExprLexer {
public:
    ExprLexer(std::string_view text, std::string source, int line, int column0)
        : text_(text), source_(std::move(source)), line_(line), column0_(column0) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    int column() const { return column0_ + static_cast<int>(pos_); }
    void advance() { ++pos_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_, column(), what); }

    unsigned long long number() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
        unsigned long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
            if (v > 1000000000ULL) fail("number too large");
            ++pos_;
        }
        return v;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            fail("expected a generator name");
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

private:
    std::string_view text_;
    std::string source_;
    int line_;
    int column0_;
    std::size_t pos_ = 0;
};

inline ExprTerm parse_term(ExprLexer& lx, bool negative) {
    ExprTerm term;
    term.coeff = negative ? -1 : 1;
    bool expect_factor = true;
    bool first = true;
    while (expect_factor) {
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            if (!first) lx.fail("numeric coefficient must come first in a product");
            term.coeff *= static_cast<long long>(lx.number());
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            ExprFactor f;
            f.column = lx.column();
            f.name = lx.identifier();
            if (lx.peek() == '^') {
                lx.advance();
                auto e = lx.number();
                f.exponent = static_cast<unsigned>(e);
            }
            if (f.exponent > 0) term.factors.push_back(std::move(f));
        } else {
            lx.fail("expected a coefficient or generator");
        }
        first = false;
        expect_factor = lx.peek() == '*';
        if (expect_factor) lx.advance();
    }
    return term;
}

}  // namespace detail

/// Parses `text`; column offsets in diagnostics are relative to column0.
inline Expr parse_expr(std::string_view text, const std::string& source = "<expr>", int line = 1, int column0 = 1) {
    detail::ExprLexer lx(text, source, line, column0);
    Expr e;
    if (lx.at_end()) lx.fail("empty expression");
    bool negative = false;
    if (lx.peek() == '-' || lx.peek() == '+') {
        negative = lx.peek() == '-';
        lx.advance();
    }
    while (true) {
        e.terms.push_back(detail::parse_term(lx, negative));
        if (lx.at_end()) break;
        char c = lx.peek();
        if (c != '+' && c != '-') lx.fail(std::string("unexpected character '") + c + "'");
        negative = c == '-';
        lx.advance();
    }
    return e;
}

}  // namespace fpell
