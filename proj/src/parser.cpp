#include "expot/parser.hpp"

#include <cctype>
#include <limits>

namespace expot {

std::vector<Token> tokenize(std::string_view input)
{
    std::vector<Token> out;
    std::size_t pos = 0;
    while (pos < input.size()) {
        unsigned char ch = static_cast<unsigned char>(input[pos]);
        if (std::isspace(ch)) {
            ++pos;
            continue;
        }
        std::size_t start = pos;
        if (std::isalpha(ch) || ch == '_') {
            while (pos < input.size() &&
                   (std::isalnum(static_cast<unsigned char>(input[pos])) || input[pos] == '_'))
                ++pos;
            std::string text(input.substr(start, pos - start));
            out.push_back({text == "i" ? TokenKind::ImagUnit : TokenKind::Identifier, start, pos, text});
            continue;
        }
        if (std::isdigit(ch)) {
            while (pos < input.size() && std::isdigit(static_cast<unsigned char>(input[pos]))) ++pos;
            out.push_back({TokenKind::Integer, start, pos, std::string(input.substr(start, pos - start))});
            continue;
        }
        TokenKind kind;
        switch (ch) {
        case '+': kind = TokenKind::Plus; break;
        case '-': kind = TokenKind::Minus; break;
        case '*': kind = TokenKind::Star; break;
        case '/': kind = TokenKind::Slash; break;
        case '^': kind = TokenKind::Caret; break;
        case '(': kind = TokenKind::LParen; break;
        case ')': kind = TokenKind::RParen; break;
        default:
            throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", start);
        }
        ++pos;
        out.push_back({kind, start, pos, std::string(1, static_cast<char>(ch))});
    }
    return out;
}

namespace {

class AstParser {
public:
    AstParser(std::string_view input) : tokens_(tokenize(input)), input_size_(input.size()) {}

    ExprPtr run()
    {
        if (tokens_.empty()) throw ParseError("empty expression", 0);
        ExprPtr e = expr();
        if (pos_ != tokens_.size()) throw ParseError("unexpected token '" + tokens_[pos_].text + "'", tokens_[pos_].begin);
        return e;
    }

private:
    const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }
    std::size_t here() const { return pos_ < tokens_.size() ? tokens_[pos_].begin : input_size_; }
    bool accept(TokenKind k)
    {
        if (const Token* t = peek(); t && t->kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    static ExprPtr binary(ExprNode::Kind k, ExprPtr l, ExprPtr r, std::size_t offset)
    {
        auto n = std::make_unique<ExprNode>();
        n->kind = k;
        n->offset = offset;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    ExprPtr expr()
    {
        ExprPtr lhs = term();
        while (const Token* t = peek()) {
            if (t->kind != TokenKind::Plus && t->kind != TokenKind::Minus) break;
            auto kind = t->kind == TokenKind::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
            std::size_t off = t->begin;
            ++pos_;
            lhs = binary(kind, std::move(lhs), term(), off);
        }
        return lhs;
    }

    ExprPtr term()
    {
        ExprPtr lhs = unary();
        while (const Token* t = peek()) {
            if (t->kind != TokenKind::Star && t->kind != TokenKind::Slash) break;
            auto kind = t->kind == TokenKind::Star ? ExprNode::Kind::Mul : ExprNode::Kind::Div;
            std::size_t off = t->begin;
            ++pos_;
            lhs = binary(kind, std::move(lhs), unary(), off);
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (const Token* t = peek(); t && (t->kind == TokenKind::Minus || t->kind == TokenKind::Plus)) {
            bool neg = t->kind == TokenKind::Minus;
            std::size_t off = t->begin;
            ++pos_;
            ExprPtr operand = unary();
            if (!neg) return operand;
            auto n = std::make_unique<ExprNode>();
            n->kind = ExprNode::Kind::Neg;
            n->offset = off;
            n->lhs = std::move(operand);
            return n;
        }
        return power();
    }

    ExprPtr power()
    {
        ExprPtr base = primary();
        if (const Token* t = peek(); t && t->kind == TokenKind::Caret) {
            std::size_t off = t->begin;
            ++pos_;
            return binary(ExprNode::Kind::Pow, std::move(base), unary(), off);
        }
        return base;
    }

    ExprPtr primary()
    {
        const Token* t = peek();
        if (!t) throw ParseError("unexpected end of input", input_size_);
        auto n = std::make_unique<ExprNode>();
        n->offset = t->begin;
        switch (t->kind) {
        case TokenKind::Integer:
            n->kind = ExprNode::Kind::Constant;
            n->value = GR(Rational::parse(t->text));
            ++pos_;
            return n;
        case TokenKind::ImagUnit:
            n->kind = ExprNode::Kind::Constant;
            n->value = GR::i();
            ++pos_;
            return n;
        case TokenKind::Identifier:
            n->kind = ExprNode::Kind::Variable;
            n->name = t->text;
            ++pos_;
            return n;
        case TokenKind::LParen: {
            ++pos_;
            ExprPtr inner = expr();
            if (!accept(TokenKind::RParen)) throw ParseError("expected ')'", here());
            return inner;
        }
        default:
            throw ParseError("unexpected token '" + t->text + "'", t->begin);
        }
    }

    std::vector<Token> tokens_;
    std::size_t input_size_;
    std::size_t pos_ = 0;
};

Poly evaluate(const ExprNode& n, VarSet vars)
{
    using K = ExprNode::Kind;
    switch (n.kind) {
    case K::Constant:
        return Poly::constant(n.value, vars);
    case K::Variable: {
        auto slot = vars.index(n.name);
        if (!slot) throw ParseError("unknown identifier '" + n.name + "'", n.offset);
        return Poly::variable(*slot, vars);
    }
    case K::Neg:
        return -evaluate(*n.lhs, vars);
    case K::Add:
        return evaluate(*n.lhs, vars) + evaluate(*n.rhs, vars);
    case K::Sub:
        return evaluate(*n.lhs, vars) - evaluate(*n.rhs, vars);
    case K::Mul:
        return evaluate(*n.lhs, vars) * evaluate(*n.rhs, vars);
    case K::Div: {
        Poly den = evaluate(*n.rhs, vars);
        if (!den.is_constant()) throw ParseError("division by a non-constant", n.offset);
        if (den.is_zero()) throw ParseError("division by zero", n.offset);
        return evaluate(*n.lhs, vars) * den.terms().begin()->second.inverse();
    }
    case K::Pow: {
        Poly e = evaluate(*n.rhs, vars);
        if (!e.is_constant()) throw ParseError("exponent must be a constant", n.offset);
        GR ev = e.is_zero() ? GR(0) : e.terms().begin()->second;
        if (!ev.is_real() || !ev.re().is_integer()) throw ParseError("exponent must be an integer", n.offset);
        if (ev.re().sign() < 0) throw ParseError("negative exponent", n.offset);
        mpz_class z = ev.re().numerator();
        if (!z.fits_uint_p() || z.get_ui() > 4096) throw ParseError("exponent too large", n.offset);
        return evaluate(*n.lhs, vars).pow(static_cast<unsigned>(z.get_ui()));
    }
    }
    throw ParseError("malformed expression", n.offset);
}

std::string render_monomial(const Monomial& m, VarSet vars)
{
    std::string out;
    for (int s = 0; s < 4; ++s) {
        if (m.e[s] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars.name(s);
        if (m.e[s] > 1) out += '^' + std::to_string(m.e[s]);
    }
    return out;
}

}  // namespace

ExprPtr parse_ast(std::string_view input) { return AstParser(input).run(); }

Poly parse(std::string_view input, VarSet vars)
{
    ExprPtr ast = parse_ast(input);
    return evaluate(*ast, vars);
}

std::string render(const Poly& f)
{
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        std::string mono = render_monomial(m, f.vars());
        bool negative_real = c.is_real() && c.re().sign() < 0;
        GR shown = negative_real && !first ? -c : c;

        std::string coef;
        if (mono.empty()) {
            coef = shown.is_real() ? shown.str() : "(" + shown.str() + ")";
        } else if (shown.is_one()) {
            coef = "";
        } else if (shown == GR(-1)) {
            coef = "-";
        } else if (shown.is_real()) {
            coef = shown.str() + "*";
        } else {
            coef = "(" + shown.str() + ")*";
        }

        if (!first) out += negative_real ? " - " : " + ";
        out += coef + mono;
        first = false;
    }
    return out;
}

}  // namespace expot
