#include "ltlfpo/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "ltlfpo/errors.hpp"

namespace ltlfpo {

namespace {

enum class Tok {
    True, False, Ident, Not, And, Or, Implies, Iff,
    Next, WeakNext, Until, Release, Eventually, Globally,
    LParen, RParen, End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        std::size_t l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string word(s.substr(i, j - i));
            Tok kind = Tok::Ident;
            if (word == "true") kind = Tok::True;
            else if (word == "false") kind = Tok::False;
            else if (word == "X") kind = Tok::Next;
            else if (word == "WX") kind = Tok::WeakNext;
            else if (word == "U") kind = Tok::Until;
            else if (word == "R") kind = Tok::Release;
            else if (word == "F") kind = Tok::Eventually;
            else if (word == "G") kind = Tok::Globally;
            out.push_back({kind, word, l, cl});
            advance(j - i);
            continue;
        }
        auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
        if (starts("<->")) {
            out.push_back({Tok::Iff, "<->", l, cl});
            advance(3);
        } else if (starts("->")) {
            out.push_back({Tok::Implies, "->", l, cl});
            advance(2);
        } else if (c == '!') {
            out.push_back({Tok::Not, "!", l, cl});
            advance(1);
        } else if (c == '&') {
            out.push_back({Tok::And, "&", l, cl});
            advance(1);
        } else if (c == '|') {
            out.push_back({Tok::Or, "|", l, cl});
            advance(1);
        } else if (c == '(') {
            out.push_back({Tok::LParen, "(", l, cl});
            advance(1);
        } else if (c == ')') {
            out.push_back({Tok::RParen, ")", l, cl});
            advance(1);
        } else {
            throw ParseError(std::string("unknown token '") + c + "'", l, cl);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Formula parse() {
        if (peek().kind == Tok::End) throw ParseError("empty formula", peek().line, peek().column);
        Formula f = parse_iff();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(msg, t.line, t.column);
    }

    void operand_expected(const Token& op) const {
        Tok k = peek().kind;
        if (k == Tok::End || k == Tok::RParen || k == Tok::And || k == Tok::Or || k == Tok::Implies ||
            k == Tok::Iff || k == Tok::Until || k == Tok::Release)
            fail("missing right operand of '" + op.text + "'");
    }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        while (peek().kind == Tok::Iff) {
            const Token& op = take();
            operand_expected(op);
            lhs = Formula::iff(lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (peek().kind == Tok::Implies) {
            const Token& op = take();
            operand_expected(op);
            return Formula::implies(lhs, parse_implies());
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (peek().kind == Tok::Or) {
            const Token& op = take();
            operand_expected(op);
            lhs = Formula::disj(lhs, parse_and());
        }
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_until();
        while (peek().kind == Tok::And) {
            const Token& op = take();
            operand_expected(op);
            lhs = Formula::conj(lhs, parse_until());
        }
        return lhs;
    }

    Formula parse_until() {
        Formula lhs = parse_unary();
        Tok k = peek().kind;
        if (k == Tok::Until || k == Tok::Release) {
            const Token& op = take();
            operand_expected(op);
            Formula rhs = parse_until();
            return k == Tok::Until ? Formula::until(lhs, rhs) : Formula::release(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_unary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Not:
        case Tok::Next:
        case Tok::WeakNext:
        case Tok::Eventually:
        case Tok::Globally: {
            const Token& op = take();
            operand_expected(op);
            Formula c = parse_unary();
            switch (op.kind) {
            case Tok::Not: return Formula::negation(c);
            case Tok::Next: return Formula::next(c);
            case Tok::WeakNext: return Formula::weak_next(c);
            case Tok::Eventually: return Formula::eventually(c);
            default: return Formula::globally(c);
            }
        }
        case Tok::True:
            take();
            return Formula::tt();
        case Tok::False:
            take();
            return Formula::ff();
        case Tok::Ident:
            return Formula::prop(take().text);
        case Tok::LParen: {
            take();
            if (peek().kind == Tok::RParen) fail("empty parentheses");
            Formula f = parse_iff();
            if (peek().kind != Tok::RParen) fail("expected ')'");
            take();
            return f;
        }
        case Tok::End:
            fail("unexpected end of input");
        default:
            fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) {
    Parser p(tokenize(text));
    return p.parse();
}

} // namespace ltlfpo
