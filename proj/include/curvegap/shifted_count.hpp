// Counts on the x-shifted curve C_H and the avoid/hit counts N(A, B).
//
// Relative to the base point P = (x, y) with x in S_I, a translate x + h is
// "hit" when x + h is in S_I with point P0 = (x + h, y0) and g(P, P0) is a
// pole-free value in J. N(H) counts base points whose translates are all
// hit; N(A, B) additionally requires every x + b (b in B) to be missed.
#pragma once

#include "curvegap/poly_curve.hpp"
#include "curvegap/rational_map.hpp"
#include "curvegap/shift_set.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace curvegap {

using Rational = boost::multiprecision::cpp_rational;

class ShiftedCurveSpec {
public:
    ShiftedCurveSpec(HyperellipticCurve curve, ShiftSet shifts);

    const HyperellipticCurve& curve() const noexcept { return curve_; }
    const ShiftSet& shifts() const noexcept { return shifts_; }
    /// deg C_H = 2^r d.
    u64 degree() const noexcept;

private:
    HyperellipticCurve curve_;
    ShiftSet shifts_;
};

/// Main term and explicit leading error bound of a model prediction.
struct Prediction {
    Rational main_term;
    double explicit_bound = 0.0;

    double main_term_value() const { return main_term.convert_to<double>(); }
};

struct CountReport {
    std::int64_t observed = 0;
    Prediction prediction;
    std::vector<std::string> hypothesis_flags;

    double deviation() const { return std::abs(static_cast<double>(observed) - prediction.main_term_value()); }
    bool within_bound(double slack = 1.0) const { return deviation() <= slack * prediction.explicit_bound; }
};

/// Is x + h hit relative to the base point (x, y)?
bool translate_hit(const XCoordinateSet& s, u64 x, u64 y, u64 h, const Interval& j, const RationalMapExpr& g);

/// N(H). Requires J within [0, p).
u64 count_N_H(const XCoordinateSet& s, const ShiftSet& h, const Interval& j, const RationalMapExpr& g,
              unsigned threads = 1);
u64 count_N_H(const HyperellipticCurve& curve, const ShiftSet& h, const Interval& i, const Interval& j,
              const RationalMapExpr& g, unsigned threads = 1);

/// N(A, B) by direct enumeration. Throws std::invalid_argument if A and B overlap.
u64 count_N_AB_direct(const XCoordinateSet& s, const ShiftSet& a, const ShiftSet& b, const Interval& j,
                      const RationalMapExpr& g, unsigned threads = 1);

inline constexpr std::size_t kMaxInclusionExclusionTerms = 20;

/// N(A, B) as sum over C subset of B of (-1)^|C| N(A u C). Requires |B| <= 20.
std::int64_t count_N_AB_inclusion_exclusion(const XCoordinateSet& s, const ShiftSet& a, const ShiftSet& b,
                                            const Interval& j, const RationalMapExpr& g, unsigned threads = 1);

/// |I|^{r+1} |J|^r / p^{2r} with bound 2^{3r+2} d (2^r d - 1) sqrt(p) ln^{2r+2} p.
Prediction predicted_N_H(u64 p, int d, std::size_t r, u64 i_size, u64 j_size);

/// |I| q^|A| (1-q)^|B|, q = |I||J|/p^2, with bound
/// 2^{3|A|+4|B|+1} d (2^{|A|+|B|} d - 1) sqrt(p) ln^{2|A|+2|B|+2} p.
Prediction predicted_N_AB(u64 p, int d, std::size_t a_size, std::size_t b_size, u64 i_size, u64 j_size);

/// Hypotheses that the asymptotic statements assume but the counts do not
/// need: 1 <= deg g < d, |I| >= p / ln ln p, r small against ln p.
std::vector<std::string> hypothesis_flags(const HyperellipticCurve& curve, const RationalMapExpr& g,
                                          const Interval& i, std::size_t r);

} // namespace curvegap
