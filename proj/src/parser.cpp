#include "hypersynth/parser.hpp"

#include <cctype>

#include "hypersynth/error.hpp"

namespace hypersynth {

namespace {

enum class Tok { Ident, LBrack, RBrack, LParen, RParen, Dot, Not, And, Or, Imp, Iff, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Parser {
public:
    explicit Parser(const std::string& s) : src_(s) { advance(); }

    Formula formula() {
        Formula f;
        while (cur_.kind == Tok::Ident && (cur_.text == "forall" || cur_.text == "exists") && !next_is('[')) {
            Quant q = cur_.text == "forall" ? Quant::Forall : Quant::Exists;
            advance();
            std::string v = ident("trace variable");
            expect(Tok::Dot, "'.'");
            f.prefix.emplace_back(q, v);
        }
        f.body = iff_level();
        expect(Tok::End, "end of input");
        return f;
    }

    Body body_only() {
        Body b = iff_level();
        expect(Tok::End, "end of input");
        return b;
    }

private:
    const std::string& src_;
    std::size_t i_ = 0;
    Token cur_{Tok::End, "", 0};

    bool next_is(char c) const {
        std::size_t j = i_;
        while (j < src_.size() && std::isspace(static_cast<unsigned char>(src_[j]))) ++j;
        return j < src_.size() && src_[j] == c;
    }

    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= src_.size()) {
            cur_ = {Tok::End, "", start};
            return;
        }
        char c = src_[i_];
        auto one = [&](Tok k) {
            ++i_;
            cur_ = {k, std::string(1, c), start};
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
            cur_ = {Tok::Ident, src_.substr(start, i_ - start), start};
            return;
        }
        switch (c) {
            case '[': return one(Tok::LBrack);
            case ']': return one(Tok::RBrack);
            case '(': return one(Tok::LParen);
            case ')': return one(Tok::RParen);
            case '.': return one(Tok::Dot);
            case '!': return one(Tok::Not);
            case '&': return one(Tok::And);
            case '|': return one(Tok::Or);
            default: break;
        }
        if (src_.compare(i_, 2, "->") == 0) {
            i_ += 2;
            cur_ = {Tok::Imp, "->", start};
            return;
        }
        if (src_.compare(i_, 3, "<->") == 0) {
            i_ += 3;
            cur_ = {Tok::Iff, "<->", start};
            return;
        }
        throw SyntaxError(start, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& what) {
        throw SyntaxError(cur_.pos, "expected " + what + (cur_.kind == Tok::End ? ", found end of input" : ", found '" + cur_.text + "'"));
    }

    void expect(Tok k, const std::string& what) {
        if (cur_.kind != k) fail(what);
        advance();
    }

    std::string ident(const std::string& what) {
        if (cur_.kind != Tok::Ident) fail(what);
        std::string s = cur_.text;
        advance();
        return s;
    }

    // An identifier used as an operator keyword unless it is directly indexed.
    bool keyword(const char* kw) const { return cur_.kind == Tok::Ident && cur_.text == kw && !next_is('['); }

    Body iff_level() {
        Body l = imp_level();
        while (cur_.kind == Tok::Iff) {
            advance();
            l = iff(l, imp_level());
        }
        return l;
    }

    Body imp_level() {
        Body l = or_level();
        if (cur_.kind == Tok::Imp) {
            advance();
            return implies(l, imp_level());
        }
        return l;
    }

    Body or_level() {
        Body l = and_level();
        while (cur_.kind == Tok::Or) {
            advance();
            l = lor(l, and_level());
        }
        return l;
    }

    Body and_level() {
        Body l = until_level();
        while (cur_.kind == Tok::And) {
            advance();
            l = land(l, until_level());
        }
        return l;
    }

    Body until_level() {
        Body l = unary();
        if (keyword("U")) {
            advance();
            return until(l, until_level());
        }
        return l;
    }

    Body unary() {
        if (cur_.kind == Tok::Not) {
            advance();
            return lnot(unary());
        }
        if (keyword("X")) {
            advance();
            return next(unary());
        }
        if (keyword("F")) {
            advance();
            return eventually(unary());
        }
        if (keyword("G")) {
            advance();
            return globally(unary());
        }
        return primary();
    }

    Body primary() {
        if (cur_.kind == Tok::LParen) {
            advance();
            Body b = iff_level();
            expect(Tok::RParen, "')'");
            return b;
        }
        if (keyword("true")) {
            advance();
            return tt();
        }
        if (keyword("false")) {
            advance();
            return ff();
        }
        if (cur_.kind != Tok::Ident) fail("atom");
        if (keyword("U")) fail("operand");
        std::string p = cur_.text;
        advance();
        expect(Tok::LBrack, "'[' after proposition " + p);
        std::string v = ident("trace variable");
        expect(Tok::RBrack, "']'");
        return atom(p, v);
    }
};

}  // namespace

Formula parse(const std::string& text) {
    Parser p(text);
    Formula f = p.formula();
    check_closed(f);
    return f;
}

Body parse_body(const std::string& text) {
    Parser p(text);
    return p.body_only();
}

}  // namespace hypersynth
