// SPDX-License-Identifier: Apache-2.0
#include "mvhull/term.hpp"

#include "mvhull/mvcore.hpp"

#include <cctype>
#include <optional>

namespace mvhull::term {

bool Term::has_scalars() const {
    if (op == Op::Scalar) return true;
    for (const auto& a : args) {
        if (a.has_scalars()) return true;
    }
    return false;
}

std::set<std::string> Term::variables() const {
    std::set<std::string> out;
    if (op == Op::Var) out.insert(name);
    for (const auto& a : args) {
        auto sub = a.variables();
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

namespace {

enum class Tok { End, Oplus, Odot, Join, Meet, Neg, Hash, LParen, RParen, Ident, Int, Rational };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t column = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Token t;
        t.column = pos_ + 1;
        if (pos_ >= s_.size()) return t;
        const std::string_view rest = s_.substr(pos_);
        auto take = [&](Tok k, std::size_t n) {
            t.kind = k;
            t.text = std::string(rest.substr(0, n));
            pos_ += n;
            return t;
        };
        if (rest.starts_with("(+)")) return take(Tok::Oplus, 3);
        if (rest.starts_with("(.)")) return take(Tok::Odot, 3);
        if (rest.starts_with("\\/")) return take(Tok::Join, 2);
        if (rest.starts_with("/\\")) return take(Tok::Meet, 2);
        const char c = rest[0];
        if (c == '~') return take(Tok::Neg, 1);
        if (c == '#') return take(Tok::Hash, 1);
        if (c == '(') return take(Tok::LParen, 1);
        if (c == ')') return take(Tok::RParen, 1);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t n = 1;
            while (n < rest.size() && (std::isalnum(static_cast<unsigned char>(rest[n])) || rest[n] == '_')) ++n;
            return take(Tok::Ident, n);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && rest.size() > 1 &&
                                                             std::isdigit(static_cast<unsigned char>(rest[1])))) {
            std::size_t n = 1;
            while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
            if (n + 1 < rest.size() && rest[n] == '/' && std::isdigit(static_cast<unsigned char>(rest[n + 1]))) {
                n += 1;
                while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
                return take(Tok::Rational, n);
            }
            return take(Tok::Int, n);
        }
        fail(ErrorCode::Parse, "column " + std::to_string(t.column) + ": unexpected character '" +
                                   std::string(1, c) + "'");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) { advance(); }

    Term parse_all() {
        Term t = term();
        if (cur_.kind != Tok::End) error("unexpected '" + cur_.text + "'");
        return t;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::Parse, "column " + std::to_string(cur_.column) + ": " + what);
    }

    void advance() {
        cur_ = peeked_ ? std::move(*peeked_) : lex_.next();
        peeked_.reset();
    }

    const Token& peek() {
        if (!peeked_) peeked_ = lex_.next();
        return *peeked_;
    }

    Term term() {
        const bool scalar_ahead =
            cur_.kind == Tok::Rational || (cur_.kind == Tok::Int && peek().kind == Tok::Hash);
        if (scalar_ahead) {
            const std::size_t col = cur_.column;
            const Rat q = Rat::parse(cur_.text);
            advance();
            if (cur_.kind != Tok::Hash) error("expected '#' after scalar");
            advance();
            if (q.sign() < 0 || Rat(1) < q) {
                fail(ErrorCode::Domain, "column " + std::to_string(col) + ": scalar " + q.str() + " is outside [0,1]");
            }
            return Term::scaled(q, disj());
        }
        return disj();
    }

    template <class Next>
    Term left_assoc(Tok tok, Op op, Next next) {
        Term t = (this->*next)();
        while (cur_.kind == tok) {
            advance();
            t = Term::binary(op, std::move(t), (this->*next)());
        }
        return t;
    }

    Term disj() { return left_assoc(Tok::Join, Op::Join, &Parser::conj); }
    Term conj() { return left_assoc(Tok::Meet, Op::Meet, &Parser::sum); }
    Term sum() { return left_assoc(Tok::Oplus, Op::Oplus, &Parser::prod); }
    Term prod() { return left_assoc(Tok::Odot, Op::Odot, &Parser::atom); }

    Term atom() {
        switch (cur_.kind) {
            case Tok::Neg:
                advance();
                return Term::unary(Op::Neg, atom());
            case Tok::LParen: {
                advance();
                Term t = term();
                if (cur_.kind != Tok::RParen) error("expected ')'");
                advance();
                return t;
            }
            case Tok::Ident: {
                Term t = Term::var(cur_.text);
                advance();
                return t;
            }
            case Tok::Int: {
                if (cur_.text != "0" && cur_.text != "1") error("only the constants 0 and 1 are allowed, got '" + cur_.text + "'");
                Term t = cur_.text == "0" ? Term::zero() : Term::one();
                advance();
                return t;
            }
            case Tok::Rational: error("scalar '" + cur_.text + "' must start a (parenthesized) term");
            case Tok::End: error("unexpected end of input");
            default: error("unexpected '" + cur_.text + "'");
        }
    }

    Lexer lex_;
    Token cur_;
    std::optional<Token> peeked_;
};

// Binding strength: scalar 0, join 1, meet 2, oplus 3, odot 4, atoms 5.
int level(Op op) {
    switch (op) {
        case Op::Scalar: return 0;
        case Op::Join: return 1;
        case Op::Meet: return 2;
        case Op::Oplus: return 3;
        case Op::Odot: return 4;
        default: return 5;
    }
}

const char* symbol(Op op) {
    switch (op) {
        case Op::Join: return " \\/ ";
        case Op::Meet: return " /\\ ";
        case Op::Oplus: return " (+) ";
        case Op::Odot: return " (.) ";
        default: return "";
    }
}

void render(const Term& t, int need, std::string& out) {
    const bool paren = level(t.op) < need;
    if (paren) out += '(';
    switch (t.op) {
        case Op::Var: out += t.name; break;
        case Op::Zero: out += '0'; break;
        case Op::One: out += '1'; break;
        case Op::Neg:
            out += '~';
            render(t.args[0], 5, out);
            break;
        case Op::Scalar:
            out += t.scalar.num().get_str() + "/" + t.scalar.den().get_str() + " # ";
            render(t.args[0], 1, out);
            break;
        default: {
            const int l = level(t.op);
            render(t.args[0], l, out);
            out += symbol(t.op);
            render(t.args[1], l + 1, out);
            break;
        }
    }
    if (paren) out += ')';
}

struct RatAlg {
    using value_type = Rat;
    const std::map<std::string, Rat>& env;
    Context ctx;

    static void unit(const Rat& x) {
        if (x.sign() < 0 || Rat(1) < x) fail(ErrorCode::Domain, "value " + x.str() + " is outside [0,1]");
    }
    Rat var(const std::string& n) const {
        const auto it = env.find(n);
        if (it == env.end()) fail(ErrorCode::Domain, "unbound variable '" + n + "'");
        unit(it->second);
        return it->second;
    }
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat neg(const Rat& a) const { return Rat(1) - a; }
    Rat oplus(const Rat& a, const Rat& b) const { return min(Rat(1), a + b); }
    Rat odot(const Rat& a, const Rat& b) const { return max(Rat(0), a + b - Rat(1)); }
    Rat join(const Rat& a, const Rat& b) const { return max(a, b); }
    Rat meet(const Rat& a, const Rat& b) const { return min(a, b); }
    Rat scalar(const Rat& q, const Rat& a) const {
        if (ctx == Context::MV) fail(ErrorCode::Domain, "scalar multiplication in a plain MV context");
        return q * a;
    }
};

struct VecAlg {
    using value_type = QVector;
    const std::map<std::string, QVector>& env;
    std::size_t m;
    Context ctx;

    QVector var(const std::string& n) const {
        const auto it = env.find(n);
        if (it == env.end()) fail(ErrorCode::Domain, "unbound variable '" + n + "'");
        if (it->second.size() != m) fail(ErrorCode::Domain, "variable '" + n + "' has the wrong length");
        if (!in_unit_cube(it->second)) fail(ErrorCode::Domain, "variable '" + n + "' is outside [0,1]^m");
        return it->second;
    }
    QVector zero() const { return QVector(m); }
    QVector one() const { return QVector::constant(m, Rat(1)); }
    QVector neg(const QVector& a) const { return mv::neg(a); }
    QVector oplus(const QVector& a, const QVector& b) const { return mv::oplus(a, b); }
    QVector odot(const QVector& a, const QVector& b) const { return mv::odot(a, b); }
    QVector join(const QVector& a, const QVector& b) const { return mv::join(a, b); }
    QVector meet(const QVector& a, const QVector& b) const { return mv::meet(a, b); }
    QVector scalar(const Rat& q, const QVector& a) const {
        if (ctx == Context::MV) fail(ErrorCode::Domain, "scalar multiplication in a plain MV context");
        return q * a;
    }
};

}  // namespace

Term parse(std::string_view input) { return Parser(input).parse_all(); }

std::string print(const Term& t) {
    std::string out;
    render(t, 0, out);
    return out;
}

Rat eval(const Term& t, const std::map<std::string, Rat>& env, Context ctx) {
    RatAlg alg{env, ctx};
    return fold(t, alg);
}

QVector eval(const Term& t, const std::map<std::string, QVector>& env, std::size_t m, Context ctx) {
    VecAlg alg{env, m, ctx};
    return fold(t, alg);
}

}  // namespace mvhull::term
