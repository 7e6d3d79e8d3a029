#include "swdual/expression.hpp"

#include <cctype>
#include <cstdlib>

namespace swdual {
namespace {

struct Token {
    enum Kind { Integer, Symbol, Plus, Minus, Star, Caret, End } kind;
    std::string text;
    long long value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) { tok_.kind = Token::End; return; }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_, ++col_;
            tok_.kind = Token::Integer;
            tok_.text = s_.substr(start, pos_ - start);
            tok_.value = std::strtoll(tok_.text.c_str(), nullptr, 10);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_, ++col_;
            tok_.kind = Token::Symbol;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        ++pos_;
        ++col_;
        switch (c) {
            case '+': tok_.kind = Token::Plus; return;
            case '-': tok_.kind = Token::Minus; return;
            case '*': tok_.kind = Token::Star; return;
            case '^': tok_.kind = Token::Caret; return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'",
                                 line_, col_ - 1);
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// A single product while parsing: monomial exponents, j power, scalar.
struct Factor {
    Monomial mono;
    int jpow = 0;
    GaloisRingElement scalar;
};

class Parser {
public:
    Parser(const std::string& text, const ExpressionContext& ctx)
        : lex_(text), ctx_(ctx) {}

    AlgebraElement parse() {
        AlgebraElement out = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw ParseError("trailing input", t.line, t.col);
        return out;
    }

private:
    AlgebraElement parse_expr() {
        AlgebraElement acc;
        bool negate = false;
        if (lex_.peek().kind == Token::Minus) {
            lex_.take();
            negate = true;
        }
        acc += term_element(parse_term(), negate);
        while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
            bool minus = lex_.take().kind == Token::Minus;
            acc += term_element(parse_term(), minus);
        }
        return acc;
    }

    Factor parse_term() {
        Factor f;
        f.mono = Monomial(ctx_.num_generators);
        f.scalar = GaloisRingElement::one(ctx_.precision);
        apply_factor(f);
        while (lex_.peek().kind == Token::Star) {
            lex_.take();
            apply_factor(f);
        }
        return f;
    }

    void apply_factor(Factor& f) {
        Token t = lex_.take();
        if (t.kind == Token::Integer) {
            f.scalar *= GaloisRingElement::from_int(t.value, ctx_.precision);
            return;
        }
        if (t.kind != Token::Symbol)
            throw ParseError("expected integer or symbol", t.line, t.col);

        int expo = 1;
        if (lex_.peek().kind == Token::Caret) {
            lex_.take();
            bool neg = false;
            if (lex_.peek().kind == Token::Minus) {
                lex_.take();
                neg = true;
            }
            Token e = lex_.take();
            if (e.kind != Token::Integer)
                throw ParseError("expected integer exponent", e.line, e.col);
            expo = static_cast<int>(e.value);
            if (neg) expo = -expo;
        }

        if (t.text == "j") {
            if (expo < 0)
                throw ParseError("negative power of j", t.line, t.col);
            f.jpow += expo;
            return;
        }
        if (t.text == "w") {
            if (expo < 0)
                throw ParseError("negative power of w", t.line, t.col);
            GaloisRingElement w = GaloisRingElement::omega(ctx_.precision);
            for (int i = 0; i < expo % 3; ++i) f.scalar *= w;
            return;
        }
        int g = ctx_.find_generator(t.text);
        if (g < 0)
            throw ParseError("unknown symbol '" + t.text + "'", t.line, t.col);
        if (expo < 0 && !ctx_.is_invertible(g))
            throw ParseError("negative exponent on non-invertible generator '" +
                                 t.text + "'",
                             t.line, t.col);
        f.mono.set_exp(g, f.mono.exp(g) + expo);
    }

    AlgebraElement term_element(const Factor& f, bool negate) {
        GaloisRingElement c = negate ? -f.scalar : f.scalar;
        TruncatedSeries coeff =
            TruncatedSeries::constant(c, ctx_.truncation).shifted(f.jpow);
        AlgebraElement e;
        e.add_term(f.mono, coeff);
        return e;
    }

    Lexer lex_;
    const ExpressionContext& ctx_;
};

}  // namespace

AlgebraElement parse_expression(const std::string& text, const ExpressionContext& ctx) {
    return Parser(text, ctx).parse();
}

}  // namespace swdual
