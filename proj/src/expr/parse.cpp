#include "rsym/parse.hpp"

#include <cctype>
#include <set>
#include <string>

#include "rsym/calculus.hpp"
#include "rsym/errors.hpp"

namespace rsym {

namespace {

enum class Tok { End, Ident, Number, Op, LParen, RParen, Comma };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
};

// Names that look like builtins we do not support.
const std::set<std::string, std::less<>> kReserved = {
    "tan", "cot", "sec", "csc", "tanh", "coth", "asin", "acos", "atan", "asinh", "acosh",
    "atanh", "ln", "abs", "sign", "log10", "log2", "pow", "min", "max", "erf", "gamma"};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        Token t;
        t.pos = i_;
        if (i_ >= s_.size()) return t;
        char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            t.kind = Tok::Ident;
            t.text = std::string(s_.substr(b, i_ - b));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t b = i_;
            bool dot = false;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
                if (s_[i_] == '.') {
                    if (dot) throw ParseError("malformed number", i_);
                    dot = true;
                }
                ++i_;
            }
            t.kind = Tok::Number;
            t.text = std::string(s_.substr(b, i_ - b));
            if (t.text == ".") throw ParseError("malformed number", b);
            return t;
        }
        ++i_;
        t.text = std::string(1, c);
        switch (c) {
            case '+':
            case '-':
            case '*':
            case '/':
            case '^': t.kind = Tok::Op; return t;
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case ',': t.kind = Tok::Comma; return t;
            default: throw ParseError(std::string("unexpected character '") + c + "'", t.pos);
        }
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

Rational parse_decimal(const std::string& text, std::size_t pos) {
    auto dot = text.find('.');
    std::string digits = text;
    std::int64_t den = 1;
    if (dot != std::string::npos) {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        for (std::size_t k = dot + 1; k < text.size(); ++k) {
            if (den > INT64_MAX / 10) throw ParseError("number too long", pos);
            den *= 10;
        }
    }
    std::int64_t num = 0;
    for (char c : digits) {
        if (num > (INT64_MAX - 9) / 10) throw ParseError("number too long", pos);
        num = num * 10 + (c - '0');
    }
    return Rational(num, den);
}

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) { advance(); }

    Expr parse_all() {
        Expr e = expression();
        if (cur_.kind != Tok::End) unexpected();
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void unexpected() {
        if (cur_.kind == Tok::End) throw ParseError("unexpected end of input", cur_.pos);
        throw ParseError("unexpected '" + cur_.text + "'", cur_.pos);
    }

    void expect(Tok k, const char* what) {
        if (cur_.kind != k) {
            if (cur_.kind == Tok::End) throw ParseError(std::string("expected ") + what, cur_.pos);
            throw ParseError(std::string("expected ") + what + " but found '" + cur_.text + "'", cur_.pos);
        }
        advance();
    }

    bool at_op(char c) const { return cur_.kind == Tok::Op && cur_.text[0] == c; }

    Expr expression() {
        Expr acc = product();
        std::vector<Expr> terms{acc};
        while (at_op('+') || at_op('-')) {
            bool minus = at_op('-');
            advance();
            Expr t = product();
            terms.push_back(minus ? -t : t);
        }
        return terms.size() == 1 ? terms[0] : add(terms);
    }

    Expr product() {
        Expr acc = unary();
        while (at_op('*') || at_op('/')) {
            bool div = at_op('/');
            std::size_t pos = cur_.pos;
            advance();
            Expr rhs = unary();
            if (div) {
                if (rhs.is_zero()) throw ParseError("division by zero", pos);
                acc = acc / rhs;
            } else {
                acc = acc * rhs;
            }
        }
        return acc;
    }

    Expr unary() {
        if (at_op('-')) {
            advance();
            return -unary();
        }
        if (at_op('+')) {
            advance();
            return unary();
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (at_op('^')) {
            std::size_t pos = cur_.pos;
            advance();
            Expr ex = unary();
            if (!ex.is_number()) throw ParseError("exponent must be a rational number", pos);
            try {
                return pow(base, ex.number());
            } catch (const std::domain_error& err) {
                throw ParseError(err.what(), pos);
            }
        }
        return base;
    }

    void reject_implicit() {
        if (cur_.kind == Tok::Ident || cur_.kind == Tok::Number || cur_.kind == Tok::LParen)
            throw ParseError("implicit multiplication is not allowed", cur_.pos);
    }

    Expr primary() {
        Expr out;
        switch (cur_.kind) {
            case Tok::Number:
                out = Expr(parse_decimal(cur_.text, cur_.pos));
                advance();
                break;
            case Tok::LParen:
                advance();
                out = expression();
                expect(Tok::RParen, "')'");
                break;
            case Tok::Ident: out = identifier(); break;
            default: unexpected();
        }
        reject_implicit();
        return out;
    }

    std::vector<Expr> call_args() {
        expect(Tok::LParen, "'('");
        std::vector<Expr> args;
        if (cur_.kind == Tok::RParen) {
            advance();
            return args;
        }
        args.push_back(expression());
        while (cur_.kind == Tok::Comma) {
            advance();
            args.push_back(expression());
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    Expr identifier() {
        std::string name = cur_.text;
        std::size_t pos = cur_.pos;
        advance();
        if (cur_.kind != Tok::LParen) {
            if (name == "D" || fn_from_name(name) || name == "sqrt" || kReserved.count(name))
                throw ParseError("'" + name + "' must be called with arguments", pos);
            return Expr::symbol(name);
        }
        if (kReserved.count(name)) throw ParseError("unknown builtin function '" + name + "'", pos);
        std::size_t args_pos = cur_.pos;
        std::vector<Expr> args = call_args();
        if (name == "D") return derivative(args, pos);
        if (name == "sqrt" || fn_from_name(name)) {
            if (args.size() != 1) throw ParseError("'" + name + "' takes one argument", args_pos);
            try {
                if (name == "sqrt") return sqrt(args[0]);
                return apply(*fn_from_name(name), args[0]);
            } catch (const std::domain_error& err) {
                throw ParseError(err.what(), pos);
            }
        }
        if (args.empty()) throw ParseError("unknown function '" + name + "' needs arguments", args_pos);
        return Expr::function(name, std::move(args));
    }

    Expr derivative(const std::vector<Expr>& args, std::size_t pos) {
        if (args.size() != 2 && args.size() != 3) throw ParseError("D takes 2 or 3 arguments", pos);
        int order = 1;
        if (args.size() == 3) {
            if (!args[2].is_number() || !args[2].number().is_integer() || args[2].number().is_negative())
                throw ParseError("derivative order must be a nonnegative integer", pos);
            order = static_cast<int>(args[2].number().num());
        }
        const Expr& f = args[0];
        const Expr& v = args[1];
        if (f.kind() == Kind::Jet) {
            const auto& fa = f.node().args;
            for (std::size_t i = 0; i < fa.size(); ++i)
                if (fa[i] == v) return order == 0 ? f : jet_raise(f, i, order);
        }
        if (v.kind() != Kind::Symbol) throw ParseError("D needs a symbol or an argument of the differentiated function", pos);
        // A bare name is read as an unknown function of the differentiation variable.
        if (f.kind() == Kind::Symbol && f != v) return Expr::jet(f.node().name, {v}, {order});
        return diff(f, v, order);
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace

Expr parse(std::string_view text) {
    Parser p(text);
    return p.parse_all();
}

}  // namespace rsym
