#include "qeuclid/expr.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace qeuclid {

ExprError::ExprError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t offset;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[k]);
        if (std::isspace(c)) {
            ++k;
            continue;
        }
        const std::size_t start = k;
        if (std::isdigit(c)) {
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            out.push_back({Tok::number, s.substr(start, k - start), start});
            continue;
        }
        if (std::isalpha(c)) {
            while (k < s.size() && std::isalnum(static_cast<unsigned char>(s[k]))) ++k;
            out.push_back({Tok::ident, s.substr(start, k - start), start});
            continue;
        }
        Tok t;
        switch (c) {
            case '+': t = Tok::plus; break;
            case '-': t = Tok::minus; break;
            case '*': t = Tok::star; break;
            case '/': t = Tok::slash; break;
            case '^': t = Tok::caret; break;
            case '(': t = Tok::lparen; break;
            case ')': t = Tok::rparen; break;
            default: throw ExprError(std::string("unexpected character '") + s[k] + "'", k);
        }
        out.push_back({t, s.substr(k, 1), k});
        ++k;
    }
    out.push_back({Tok::end, {}, s.size()});
    return out;
}

bool known_symbol(std::string_view name) {
    if (name == "q" || name == "sqrtq" || name == "h" || name == "i") return true;
    for (const GeneratorInfo& g : all_generators())
        if (name == g.token) return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view s) : toks_(lex(s)) {}

    Ast run() {
        Ast a = expr();
        if (peek().kind != Tok::end) throw ExprError("unexpected '" + std::string(peek().text) + "'", peek().offset);
        return a;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    static Ast node(Ast::Kind k, std::size_t offset, std::vector<Ast> args) {
        Ast a;
        a.kind = k;
        a.offset = offset;
        a.args = std::move(args);
        return a;
    }

    Ast expr() {
        Ast left = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const Token op = take();
            Ast right = term();
            left = node(op.kind == Tok::plus ? Ast::Kind::add : Ast::Kind::sub, op.offset, {std::move(left), std::move(right)});
        }
        return left;
    }

    Ast term() {
        Ast left = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token op = take();
            Ast right = unary();
            left = node(op.kind == Tok::star ? Ast::Kind::mul : Ast::Kind::div, op.offset, {std::move(left), std::move(right)});
        }
        return left;
    }

    Ast unary() {
        if (peek().kind == Tok::minus) {
            const Token op = take();
            return node(Ast::Kind::neg, op.offset, {unary()});
        }
        if (peek().kind == Tok::plus) {
            take();
            return unary();
        }
        return power();
    }

    Ast power() {
        Ast base = primary();
        if (peek().kind != Tok::caret) return base;
        const Token op = take();
        bool paren = false;
        if (peek().kind == Tok::lparen) {
            take();
            paren = true;
        }
        bool negative = false;
        if (peek().kind == Tok::minus) {
            take();
            negative = true;
        }
        const Token num = take();
        if (num.kind != Tok::number) throw ExprError("integer exponent expected", num.offset);
        int e = 0;
        const auto [p, ec] = std::from_chars(num.text.data(), num.text.data() + num.text.size(), e);
        if (ec != std::errc() || p != num.text.data() + num.text.size()) throw ExprError("exponent out of range", num.offset);
        if (paren) {
            if (peek().kind != Tok::rparen) throw ExprError("')' expected", peek().offset);
            take();
        }
        Ast a = node(Ast::Kind::pow, op.offset, {std::move(base)});
        a.exponent = negative ? -e : e;
        if (peek().kind == Tok::caret) throw ExprError("ambiguous repeated '^'", peek().offset);
        return a;
    }

    Ast primary() {
        const Token t = take();
        switch (t.kind) {
            case Tok::number: {
                Ast a = node(Ast::Kind::number, t.offset, {});
                a.text = std::string(t.text);
                return a;
            }
            case Tok::ident: {
                if (!known_symbol(t.text)) throw ExprError("unknown symbol '" + std::string(t.text) + "'", t.offset);
                Ast a = node(Ast::Kind::symbol, t.offset, {});
                a.text = std::string(t.text);
                return a;
            }
            case Tok::lparen: {
                Ast inner = expr();
                if (peek().kind != Tok::rparen) throw ExprError("')' expected", peek().offset);
                take();
                return inner;
            }
            case Tok::end:
                throw ExprError("unexpected end of input", t.offset);
            default:
                throw ExprError("unexpected '" + std::string(t.text) + "'", t.offset);
        }
    }
};

ComplexElement scaled(const Scalar& k, const ComplexElement& a) { return {k * a.re, k * a.im}; }

ComplexElement add(const ComplexElement& a, const ComplexElement& b) { return {a.re + b.re, a.im + b.im}; }

ComplexElement product(const Algebra& alg, const ComplexElement& a, const ComplexElement& b) {
    return {alg.mul(a.re, b.re) - alg.mul(a.im, b.im), alg.mul(a.re, b.im) + alg.mul(a.im, b.re)};
}

ComplexElement symbol_value(const std::string& name) {
    if (name == "q") return {Element(Scalar::q()), {}};
    if (name == "sqrtq") return {Element(Scalar::sqrtq()), {}};
    if (name == "h") return {Element(Scalar::h()), {}};
    if (name == "i") return {{}, Element(1)};
    for (const GeneratorInfo& g : all_generators())
        if (name == g.token) return {Element::generator(g.gen), {}};
    throw std::logic_error("unknown symbol " + name);
}

// 1 / a for a real or complex constant, or a single invertible monomial.
ComplexElement reciprocal(const Algebra& alg, const ComplexElement& a, std::size_t offset) {
    if (a.is_zero()) throw ExprError("division by zero", offset);
    if (auto k = as_scalar(a)) return {Element(k->inverse()), {}};
    const bool re_const = a.re.is_zero() || (a.re.size() == 1 && a.re.terms().begin()->first.is_identity());
    const bool im_const = a.im.size() == 1 && a.im.terms().begin()->first.is_identity();
    if (re_const && im_const) {
        const Scalar x = a.re.coefficient(Monomial{});
        const Scalar y = a.im.coefficient(Monomial{});
        const Scalar n = (x * x + y * y).inverse();
        return {Element(x * n), Element(-(y * n))};
    }
    if (a.im.is_zero()) {
        try {
            return {alg.power(a.re, -1), {}};
        } catch (const std::domain_error&) {
        }
    }
    throw ExprError("divisor is not invertible", offset);
}

ComplexElement power_of(const Algebra& alg, const ComplexElement& a, int n, std::size_t offset) {
    if (n < 0) return power_of(alg, reciprocal(alg, a, offset), -n, offset);
    ComplexElement out{Element(1), {}};
    for (int k = 0; k < n; ++k) out = product(alg, out, a);
    return out;
}

std::string kind_symbol(Ast::Kind k) {
    switch (k) {
        case Ast::Kind::add: return " + ";
        case Ast::Kind::sub: return " - ";
        case Ast::Kind::mul: return " * ";
        case Ast::Kind::div: return " / ";
        default: return "";
    }
}

}  // namespace

std::string Ast::to_string() const {
    switch (kind) {
        case Kind::number:
        case Kind::symbol:
            return text;
        case Kind::neg:
            return "(-" + args[0].to_string() + ")";
        case Kind::pow:
            return "(" + args[0].to_string() + "^" + std::to_string(exponent) + ")";
        default:
            return "(" + args[0].to_string() + kind_symbol(kind) + args[1].to_string() + ")";
    }
}

Ast parse(std::string_view text) { return Parser(text).run(); }

ComplexElement evaluate(const Algebra& alg, const Ast& ast) {
    switch (ast.kind) {
        case Ast::Kind::number: {
            std::int64_t v = 0;
            const auto [p, ec] = std::from_chars(ast.text.data(), ast.text.data() + ast.text.size(), v);
            if (ec != std::errc() || v > (std::numeric_limits<std::int64_t>::max() >> 8))
                throw ExprError("integer literal too large", ast.offset);
            return {Element(Scalar(v)), {}};
        }
        case Ast::Kind::symbol:
            return symbol_value(ast.text);
        case Ast::Kind::neg:
            return scaled(Scalar(-1), evaluate(alg, ast.args[0]));
        case Ast::Kind::add:
            return add(evaluate(alg, ast.args[0]), evaluate(alg, ast.args[1]));
        case Ast::Kind::sub:
            return add(evaluate(alg, ast.args[0]), scaled(Scalar(-1), evaluate(alg, ast.args[1])));
        case Ast::Kind::mul:
            return product(alg, evaluate(alg, ast.args[0]), evaluate(alg, ast.args[1]));
        case Ast::Kind::div:
            return product(alg, evaluate(alg, ast.args[0]), reciprocal(alg, evaluate(alg, ast.args[1]), ast.offset));
        case Ast::Kind::pow:
            return power_of(alg, evaluate(alg, ast.args[0]), ast.exponent, ast.offset);
    }
    throw std::logic_error("bad expression node");
}

Element parse_element(const Algebra& alg, std::string_view text) {
    const ComplexElement v = evaluate(alg, parse(text));
    if (!v.im.is_zero()) throw ExprError("expression is not real", 0);
    return v.re;
}

std::optional<Scalar> as_scalar(const ComplexElement& e) {
    if (!e.im.is_zero()) return std::nullopt;
    if (e.re.is_zero()) return Scalar();
    if (e.re.size() != 1 || !e.re.terms().begin()->first.is_identity()) return std::nullopt;
    return e.re.terms().begin()->second;
}

std::string render(const Element& e) { return e.to_string(); }

std::string render(const ComplexElement& e) {
    if (e.im.is_zero()) return render(e.re);
    const std::string im = "i * (" + render(e.im) + ")";
    if (e.re.is_zero()) return im;
    return render(e.re) + " + " + im;
}

}  // namespace qeuclid
