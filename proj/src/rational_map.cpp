#include "curvegap/rational_map.hpp"

#include <cctype>
#include <limits>
#include <random>
#include <vector>

namespace curvegap {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::invalid_argument("syntax error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

using Kind = ExprNode::Kind;
using NodePtr = std::shared_ptr<const ExprNode>;

enum class Tok { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const noexcept { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            current_ = {Tok::End, start, ""};
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            current_ = {Tok::Number, start, src_.substr(start, pos_ - start)};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            current_ = {Tok::Ident, start, src_.substr(start, pos_ - start)};
            return;
        }
        ++pos_;
        switch (c) {
        case '+': current_ = {Tok::Plus, start, "+"}; return;
        case '-': current_ = {Tok::Minus, start, "-"}; return;
        case '*': current_ = {Tok::Star, start, "*"}; return;
        case '/': current_ = {Tok::Slash, start, "/"}; return;
        case '^': current_ = {Tok::Caret, start, "^"}; return;
        case '(': current_ = {Tok::LParen, start, "("}; return;
        case ')': current_ = {Tok::RParen, start, ")"}; return;
        default: throw ParseError(start, std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    Token current_{Tok::End, 0, ""};
};

NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
    return std::make_shared<const ExprNode>(ExprNode{k, 0, MapVar::X, std::move(a), std::move(b)});
}

u64 parse_uint(const Token& t) {
    u64 v = 0;
    for (char c : t.text) {
        const u64 digit = static_cast<u64>(c - '0');
        if (v > (std::numeric_limits<u64>::max() - digit) / 10) throw ParseError(t.offset, "integer literal too large");
        v = v * 10 + digit;
    }
    return v;
}

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    NodePtr parse() {
        NodePtr e = expr();
        if (lex_.peek().kind != Tok::End) unexpected();
        return e;
    }

private:
    [[noreturn]] void unexpected() {
        const Token& t = lex_.peek();
        throw ParseError(t.offset, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            Kind k = lex_.take().kind == Tok::Plus ? Kind::Add : Kind::Sub;
            lhs = make_binary(k, lhs, term());
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            Kind k = lex_.take().kind == Tok::Star ? Kind::Mul : Kind::Div;
            lhs = make_binary(k, lhs, factor());
        }
        return lhs;
    }

    NodePtr factor() {
        NodePtr base = atom();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            if (lex_.peek().kind != Tok::Number) unexpected();
            u64 e = parse_uint(lex_.take());
            return std::make_shared<const ExprNode>(ExprNode{Kind::Pow, e, MapVar::X, std::move(base), nullptr});
        }
        return base;
    }

    NodePtr atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Tok::Number: {
            u64 v = parse_uint(lex_.take());
            return std::make_shared<const ExprNode>(ExprNode{Kind::Const, v, MapVar::X, nullptr, nullptr});
        }
        case Tok::Ident: {
            Token id = lex_.take();
            MapVar v;
            if (id.text == "x") v = MapVar::X;
            else if (id.text == "y") v = MapVar::Y;
            else if (id.text == "x0") v = MapVar::X0;
            else if (id.text == "y0") v = MapVar::Y0;
            else throw ParseError(id.offset, "unknown identifier '" + id.text + "'");
            return std::make_shared<const ExprNode>(ExprNode{Kind::Var, 0, v, nullptr, nullptr});
        }
        case Tok::LParen: {
            lex_.take();
            NodePtr e = expr();
            if (lex_.peek().kind != Tok::RParen) unexpected();
            lex_.take();
            return e;
        }
        case Tok::Minus: {
            lex_.take();
            return std::make_shared<const ExprNode>(ExprNode{Kind::Neg, 0, MapVar::X, factor(), nullptr});
        }
        default: unexpected();
        }
    }

    Lexer lex_;
};

const char* var_name(MapVar v) {
    switch (v) {
    case MapVar::X: return "x";
    case MapVar::Y: return "y";
    case MapVar::X0: return "x0";
    case MapVar::Y0: return "y0";
    }
    return "?";
}

std::string print(const ExprNode& n) {
    switch (n.kind) {
    case Kind::Const: return std::to_string(n.value);
    case Kind::Var: return var_name(n.var);
    case Kind::Neg: return "(-" + print(*n.lhs) + ")";
    case Kind::Pow: return "(" + print(*n.lhs) + "^" + std::to_string(n.value) + ")";
    case Kind::Add: return "(" + print(*n.lhs) + " + " + print(*n.rhs) + ")";
    case Kind::Sub: return "(" + print(*n.lhs) + " - " + print(*n.rhs) + ")";
    case Kind::Mul: return "(" + print(*n.lhs) + " * " + print(*n.rhs) + ")";
    case Kind::Div: return "(" + print(*n.lhs) + " / " + print(*n.rhs) + ")";
    }
    return "";
}

bool equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Kind::Const: return a.value == b.value;
    case Kind::Var: return a.var == b.var;
    case Kind::Neg: return equal(*a.lhs, *b.lhs);
    case Kind::Pow: return a.value == b.value && equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    }
}

MapDegree degree_of(const ExprNode& n) {
    switch (n.kind) {
    case Kind::Const: return {0, 0};
    case Kind::Var: return {1, 0};
    case Kind::Neg: return degree_of(*n.lhs);
    case Kind::Pow: {
        auto d = degree_of(*n.lhs);
        const int e = static_cast<int>(n.value);
        return {d.numerator * e, d.denominator * e};
    }
    case Kind::Add:
    case Kind::Sub: {
        auto a = degree_of(*n.lhs), b = degree_of(*n.rhs);
        return {std::max(a.numerator + b.denominator, b.numerator + a.denominator), a.denominator + b.denominator};
    }
    case Kind::Mul: {
        auto a = degree_of(*n.lhs), b = degree_of(*n.rhs);
        return {a.numerator + b.numerator, a.denominator + b.denominator};
    }
    case Kind::Div: {
        auto a = degree_of(*n.lhs), b = degree_of(*n.rhs);
        return {a.numerator + b.denominator, a.denominator + b.numerator};
    }
    }
    return {};
}

struct Env {
    const PrimeModulus& m;
    u64 vars[4];
};

// nullopt marks a pole
std::optional<u64> eval(const ExprNode& n, const Env& env) {
    const auto& m = env.m;
    switch (n.kind) {
    case Kind::Const: return m.reduce_u(n.value);
    case Kind::Var: return env.vars[static_cast<int>(n.var)];
    case Kind::Neg: {
        auto a = eval(*n.lhs, env);
        if (!a) return std::nullopt;
        return m.neg(*a);
    }
    case Kind::Pow: {
        auto a = eval(*n.lhs, env);
        if (!a) return std::nullopt;
        return m.pow(*a, n.value);
    }
    default: break;
    }
    auto a = eval(*n.lhs, env);
    if (!a) return std::nullopt;
    auto b = eval(*n.rhs, env);
    if (!b) return std::nullopt;
    switch (n.kind) {
    case Kind::Add: return m.add(*a, *b);
    case Kind::Sub: return m.sub(*a, *b);
    case Kind::Mul: return m.mul(*a, *b);
    case Kind::Div:
        if (*b == 0) return std::nullopt;
        return m.mul(*a, m.inv(*b));
    default: return std::nullopt;
    }
}

} // namespace

RationalMapExpr RationalMapExpr::parse(const std::string& text) { return RationalMapExpr(Parser(text).parse()); }

RationalMapExpr RationalMapExpr::builtin(const std::string& name) {
    if (name == "ell_diff") return parse("((y0+y)/(x0-x))^2 - x - x0");
    if (name == "xcoord") return parse("x0");
    throw std::invalid_argument("unknown builtin map '" + name + "'");
}

RationalMapExpr RationalMapExpr::from_text(const std::string& text) {
    if (text == "ell_diff" || text == "xcoord") return builtin(text);
    return parse(text);
}

RationalMapExpr RationalMapExpr::constant(u64 v) {
    return RationalMapExpr(std::make_shared<const ExprNode>(ExprNode{Kind::Const, v, MapVar::X, nullptr, nullptr}));
}

RationalMapExpr RationalMapExpr::variable(MapVar v) {
    return RationalMapExpr(std::make_shared<const ExprNode>(ExprNode{Kind::Var, 0, v, nullptr, nullptr}));
}

RationalMapExpr RationalMapExpr::binary(ExprNode::Kind kind, const RationalMapExpr& a, const RationalMapExpr& b) {
    if (kind != Kind::Add && kind != Kind::Sub && kind != Kind::Mul && kind != Kind::Div)
        throw std::invalid_argument("not a binary operator");
    return RationalMapExpr(make_binary(kind, a.root_, b.root_));
}

RationalMapExpr RationalMapExpr::negate(const RationalMapExpr& a) {
    return RationalMapExpr(std::make_shared<const ExprNode>(ExprNode{Kind::Neg, 0, MapVar::X, a.root_, nullptr}));
}

RationalMapExpr RationalMapExpr::power(const RationalMapExpr& a, u64 exponent) {
    return RationalMapExpr(
        std::make_shared<const ExprNode>(ExprNode{Kind::Pow, exponent, MapVar::X, a.root_, nullptr}));
}

std::string RationalMapExpr::to_string() const { return print(*root_); }

MapDegree RationalMapExpr::degree() const { return degree_of(*root_); }

bool operator==(const RationalMapExpr& a, const RationalMapExpr& b) { return equal(*a.root_, *b.root_); }

MapValue evaluate(const RationalMapExpr& g, const PrimeModulus& m, u64 x, u64 y, u64 x0, u64 y0) {
    Env env{m, {m.reduce_u(x), m.reduce_u(y), m.reduce_u(x0), m.reduce_u(y0)}};
    auto v = eval(g.root(), env);
    return v ? MapValue::of(*v) : MapValue::pole();
}

std::string to_string(RankVerdict v) {
    switch (v) {
    case RankVerdict::Independent: return "independent";
    case RankVerdict::DependentSuspect: return "dependent-suspect";
    case RankVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Row-echelon basis over F_p, grown one row at a time.
class EchelonBasis {
public:
    EchelonBasis(const PrimeModulus& m, std::size_t cols) : m_(m), cols_(cols) {}

    void insert(std::vector<u64> row) {
        for (const auto& [pivot, b] : rows_) {
            if (row[pivot] == 0) continue;
            const u64 c = row[pivot];
            for (std::size_t j = 0; j < cols_; ++j) row[j] = m_.sub(row[j], m_.mul(c, b[j]));
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            if (row[j] == 0) continue;
            const u64 li = m_.inv(row[j]);
            for (auto& v : row) v = m_.mul(v, li);
            // keep existing rows reduced at the new pivot
            for (auto& [pivot, b] : rows_) {
                if (b[j] == 0) continue;
                const u64 c = b[j];
                for (std::size_t k = 0; k < cols_; ++k) b[k] = m_.sub(b[k], m_.mul(c, row[k]));
            }
            rows_.emplace_back(j, std::move(row));
            return;
        }
    }

    std::size_t rank() const noexcept { return rows_.size(); }

private:
    const PrimeModulus& m_;
    std::size_t cols_;
    std::vector<std::pair<std::size_t, std::vector<u64>>> rows_;
};

} // namespace

RankCheckResult numeric_rank_check(const HyperellipticCurve& curve, const ShiftSet& shifts,
                                   const RationalMapExpr& g, std::size_t samples, u64 seed) {
    const std::size_t r = shifts.size();
    if (samples < r + 2) throw std::invalid_argument("numeric_rank_check needs samples >= r + 2");
    const auto& m = curve.modulus();
    const u64 p = curve.p();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> pick_x(0, p - 1);
    EchelonBasis basis(m, r + 1);
    RankCheckResult out{RankVerdict::Inconclusive};

    const std::size_t max_draws = samples * (std::size_t{32} << std::min<std::size_t>(r, 20));
    std::vector<u64> ys(r);
    for (std::size_t draw = 0; draw < max_draws && out.samples < samples; ++draw) {
        const u64 x = pick_x(rng);
        const u64 sign_bits = rng();
        auto y = m.sqrt(curve.f()(x));
        if (!y) continue;
        bool on_curve = true;
        for (std::size_t i = 0; i < r && on_curve; ++i) {
            auto yi = m.sqrt(curve.f()(m.add(x, shifts.shifts()[i])));
            if (!yi) on_curve = false;
            else ys[i] = (sign_bits >> (i + 1)) & 1 ? m.neg(*yi) : *yi;
        }
        if (!on_curve) continue;
        const u64 yb = sign_bits & 1 ? m.neg(*y) : *y;
        ++out.samples;

        std::vector<u64> row(r + 1);
        row[0] = 1;
        bool pole = false;
        for (std::size_t i = 0; i < r && !pole; ++i) {
            auto v = evaluate(g, m, x, yb, m.add(x, shifts.shifts()[i]), ys[i]);
            if (v.is_pole()) pole = true;
            else row[i + 1] = v.value();
        }
        if (pole) continue;
        ++out.pole_free_samples;
        basis.insert(std::move(row));
    }

    out.rank = basis.rank();
    if (out.rank == r + 1) out.verdict = RankVerdict::Independent;
    else if (out.pole_free_samples < r + 1) out.verdict = RankVerdict::Inconclusive;
    else out.verdict = RankVerdict::DependentSuspect;
    return out;
}

} // namespace curvegap
