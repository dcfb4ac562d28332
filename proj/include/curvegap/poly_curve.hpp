// Polynomials over F_p, the curve y^2 = f(x), and the restricted
// x-coordinate set S_I = { x : f(x) = y^2 for some y in I }.
#pragma once

#include "curvegap/fp_arith.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curvegap {

class Polynomial {
public:
    explicit Polynomial(const PrimeModulus& modulus) : modulus_(modulus) {}
    /// Coefficients low degree first; reduced mod p, trailing zeros trimmed.
    Polynomial(std::span<const i64> coefficients, const PrimeModulus& modulus);
    Polynomial(std::vector<u64> canonical, const PrimeModulus& modulus);

    /// Parses "c0,c1,...,cn" (low degree first).
    static Polynomial parse(const std::string& text, const PrimeModulus& modulus);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    const std::vector<u64>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    u64 leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

    u64 operator()(u64 x) const noexcept;
    Residue operator()(const Residue& x) const;

    Polynomial derivative() const;
    Polynomial monic() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
    }

    /// Quotient and remainder; throws std::domain_error on a zero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    std::string to_string() const;

private:
    void trim();

    PrimeModulus modulus_;
    std::vector<u64> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);

inline Residue eval_poly(const Polynomial& f, const Residue& x) { return f(x); }

/// Squarefree factorisation f = c * prod_i a_i^i (Yun). Requires deg f < p.
struct SquarefreeDecomposition {
    u64 unit = 0;
    std::vector<Polynomial> factors; // factors[i] has multiplicity i+1
};
SquarefreeDecomposition squarefree_decomposition(const Polynomial& f);

/// True iff f = c * g^2 over the algebraic closure, i.e. every irreducible
/// factor has even multiplicity. Throws std::invalid_argument if deg f >= p.
bool is_square_in_closure(const Polynomial& f);

/// Thrown when constructing a curve from a square f. certificate() holds g
/// with f = c * g^2.
class SquarePolynomial : public std::invalid_argument {
public:
    SquarePolynomial(const Polynomial& f, const Polynomial& root);
    const std::string& certificate() const noexcept { return certificate_; }

private:
    std::string certificate_;
};

class HyperellipticCurve {
public:
    /// Throws SquarePolynomial if f is a square and std::invalid_argument
    /// unless 1 <= deg f < p.
    explicit HyperellipticCurve(Polynomial f);

    const PrimeModulus& modulus() const noexcept { return f_.modulus(); }
    u64 p() const noexcept { return f_.modulus().value(); }
    const Polynomial& f() const noexcept { return f_; }
    int degree() const noexcept { return f_.degree(); }

private:
    Polynomial f_;
};

/// #{(x, y) in F_p^2 : y^2 = f(x)}.
u64 affine_point_count(const HyperellipticCurve& curve, unsigned threads = 1);

/// Half-open integer range {lo, ..., hi-1}.
struct Interval {
    u64 lo = 0;
    u64 hi = 0;

    u64 size() const noexcept { return hi - lo; }
    bool empty() const noexcept { return hi == lo; }
    bool contains(u64 v) const noexcept { return lo <= v && v < hi; }

    static Interval full(u64 p) { return {0, p}; }
    /// Parses "lo:hi".
    static Interval parse(const std::string& text);
    /// Throws std::invalid_argument unless lo <= hi <= bound.
    void check_within(u64 bound, const char* what) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct CurvePoint {
    u64 x;
    u64 y;
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

class XCoordinateSet {
public:
    XCoordinateSet(const HyperellipticCurve& curve, Interval interval, std::vector<CurvePoint> entries);

    const HyperellipticCurve& curve() const noexcept { return curve_; }
    const Interval& interval() const noexcept { return interval_; }
    const std::vector<CurvePoint>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    u64 p() const noexcept { return curve_.p(); }

    /// The unique y in I with (x, y) on the curve.
    std::optional<u64> y_at(u64 x) const noexcept;
    std::vector<u64> xs() const;

private:
    HyperellipticCurve curve_;
    Interval interval_;
    std::vector<CurvePoint> entries_;
};

/// Builds S_I. Requires I within [0, (p-1)/2].
XCoordinateSet compute_S_I(const HyperellipticCurve& curve, Interval interval, unsigned threads = 1);

struct CardinalityDeviation {
    u64 observed;
    u64 main_term;
    double bound; // 4 d (d-1) sqrt(p) ln^2 p
};
CardinalityDeviation cardinality_deviation(const XCoordinateSet& s);

} // namespace curvegap
