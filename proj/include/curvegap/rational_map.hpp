// Two-point rational functions g(x, y, x0, y0) on the curve.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' uint)?
//   atom   := uint | 'x' | 'y' | 'x0' | 'y0' | '(' expr ')' | '-' factor
//
// Integer literals are kept exact and reduced mod p at evaluation time.
#pragma once

#include "curvegap/fp_arith.hpp"
#include "curvegap/poly_curve.hpp"
#include "curvegap/shift_set.hpp"

#include <memory>
#include <optional>
#include <string>

namespace curvegap {

enum class MapVar { X, Y, X0, Y0 };

struct ExprNode {
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow };

    Kind kind;
    u64 value = 0; // constant, or exponent for Pow
    MapVar var = MapVar::X;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Degrees of numerator and denominator after combining into one fraction
/// (no cancellation is attempted, so these are upper bounds).
struct MapDegree {
    int numerator = 0;
    int denominator = 0;
    int value() const noexcept { return numerator > denominator ? numerator : denominator; }
};

/// Immutable AST; copies share nodes.
class RationalMapExpr {
public:
    static RationalMapExpr parse(const std::string& text);
    /// "ell_diff" or "xcoord"; throws std::invalid_argument otherwise.
    static RationalMapExpr builtin(const std::string& name);
    /// A builtin name or an expression.
    static RationalMapExpr from_text(const std::string& text);

    static RationalMapExpr constant(u64 v);
    static RationalMapExpr variable(MapVar v);
    static RationalMapExpr binary(ExprNode::Kind kind, const RationalMapExpr& a, const RationalMapExpr& b);
    static RationalMapExpr negate(const RationalMapExpr& a);
    static RationalMapExpr power(const RationalMapExpr& a, u64 exponent);

    const ExprNode& root() const noexcept { return *root_; }

    /// Fully parenthesised text that parses back to the same tree.
    std::string to_string() const;
    MapDegree degree() const;

    friend bool operator==(const RationalMapExpr& a, const RationalMapExpr& b);

private:
    explicit RationalMapExpr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}
    std::shared_ptr<const ExprNode> root_;
};

/// A field value or a pole.
class MapValue {
public:
    static MapValue pole() { return MapValue(); }
    static MapValue of(u64 v) { return MapValue(v); }

    bool is_pole() const noexcept { return !v_.has_value(); }
    u64 value() const { return v_.value(); }

    friend bool operator==(const MapValue&, const MapValue&) = default;

private:
    MapValue() = default;
    explicit MapValue(u64 v) : v_(v) {}
    std::optional<u64> v_;
};

/// Exact evaluation mod p; any zero denominator yields a pole.
MapValue evaluate(const RationalMapExpr& g, const PrimeModulus& m, u64 x, u64 y, u64 x0, u64 y0);

enum class RankVerdict { Independent, DependentSuspect, Inconclusive };

std::string to_string(RankVerdict v);

struct RankCheckResult {
    RankVerdict verdict;
    std::size_t rank = 0;              // rank of the (1, g_1, ..., g_r) sample matrix
    std::size_t pole_free_samples = 0; // rows that entered the matrix
    std::size_t samples = 0;           // points of C_H drawn
};

/// Samples points (x, +-y, +-y_1, ..., +-y_r) of the shifted curve C_H, builds
/// rows (1, g(P, P_1), ..., g(P, P_r)) over F_p and reports whether they span
/// rank r + 1. Rank r + 1 certifies linear independence; a deficient rank is
/// only evidence. Requires samples >= r + 2.
RankCheckResult numeric_rank_check(const HyperellipticCurve& curve, const ShiftSet& shifts,
                                   const RationalMapExpr& g, std::size_t samples, u64 seed);

} // namespace curvegap
