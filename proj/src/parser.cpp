#include "tjurina/errors.hpp"
#include "tjurina/polyring.hpp"

#include <cctype>
#include <string>

namespace tjurina {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, Slash, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) {
            cur_ = {Tok::End, "", start};
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            cur_ = {Tok::Int, s_.substr(start, i_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            cur_ = {Tok::Ident, s_.substr(start, i_ - start), start};
            return;
        }
        ++i_;
        switch (c) {
        case '+': cur_ = {Tok::Plus, "+", start}; return;
        case '-': cur_ = {Tok::Minus, "-", start}; return;
        case '*': cur_ = {Tok::Star, "*", start}; return;
        case '^': cur_ = {Tok::Caret, "^", start}; return;
        case '/': cur_ = {Tok::Slash, "/", start}; return;
        default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token cur_{Tok::End, "", 0};
};

constexpr long kMaxExponent = 1000000;

class Parser {
public:
    Parser(const std::string& text, VarsPtr vars)
        : lex_(text), vars_(std::move(vars)), result_(Polynomial::zero(vars_)) {}

    Polynomial run() {
        int sign = 1;
        if (lex_.peek().kind == Tok::Plus) {
            lex_.take();
        } else if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            sign = -1;
        }
        result_ = result_ + term().scaled(sign);
        while (lex_.peek().kind != Tok::End) {
            Token op = lex_.take();
            if (op.kind == Tok::Plus)
                sign = 1;
            else if (op.kind == Tok::Minus)
                sign = -1;
            else
                throw ParseError("expected '+' or '-'", op.pos);
            result_ = result_ + term().scaled(sign);
        }
        return result_;
    }

private:
    Polynomial term() {
        if (lex_.peek().kind == Tok::Int) {
            Rational c = coefficient();
            if (lex_.peek().kind == Tok::Star) {
                lex_.take();
                return factors().scaled(c);
            }
            if (lex_.peek().kind == Tok::Ident) // juxtaposed, e.g. "2x"
                return factors().scaled(c);
            return Polynomial::constant(vars_, c);
        }
        if (lex_.peek().kind == Tok::Ident) return factors();
        throw ParseError("expected a term", lex_.peek().pos);
    }

    Rational coefficient() {
        Token num = lex_.take();
        Rational c{Integer(num.text)};
        if (lex_.peek().kind == Tok::Slash) {
            lex_.take();
            Token den = lex_.take();
            if (den.kind != Tok::Int) throw ParseError("expected denominator", den.pos);
            Integer d(den.text);
            if (d == 0) throw ParseError("zero denominator", den.pos);
            c /= Rational(d);
        }
        return c;
    }

    Polynomial factors() {
        Polynomial p = factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            p = p * factor();
        }
        return p;
    }

    Polynomial factor() {
        Token id = lex_.take();
        if (id.kind != Tok::Ident) throw ParseError("expected a variable", id.pos);
        auto idx = vars_->index_of(id.text);
        if (!idx) throw ParseError("unknown variable '" + id.text + "'", id.pos);
        long e = 1;
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            Token ex = lex_.take();
            if (ex.kind != Tok::Int) throw ParseError("expected an exponent", ex.pos);
            if (ex.text.size() > 7) throw ParseError("exponent too large", ex.pos);
            e = std::stol(ex.text);
            if (e > kMaxExponent) throw ParseError("exponent too large", ex.pos);
        }
        std::vector<int> exps(vars_->arity(), 0);
        exps[*idx] = static_cast<int>(e);
        return Polynomial::term(vars_, Monomial(std::move(exps)), Rational(1));
    }

    Lexer lex_;
    VarsPtr vars_;
    Polynomial result_;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, VarsPtr vars) {
    if (!vars) throw std::invalid_argument("null variable set");
    return Parser(text, std::move(vars)).run();
}

} // namespace tjurina
