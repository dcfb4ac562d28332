// Exponential sums e_p(v) = exp(2 pi i v / p): interval sums, complete sums
// along the shifted curve C_H, and the Fourier reconstruction of N(H).
#pragma once

#include "curvegap/poly_curve.hpp"
#include "curvegap/rational_map.hpp"
#include "curvegap/shift_set.hpp"

#include <complex>
#include <vector>

namespace curvegap {

using Complex = std::complex<double>;

/// Table of the p-th roots of unity.
class UnitRoots {
public:
    explicit UnitRoots(u64 p);

    u64 p() const noexcept { return p_; }
    /// e_p(k) for any integer k.
    Complex operator()(i64 k) const noexcept {
        i64 r = k % static_cast<i64>(p_);
        return table_[static_cast<std::size_t>(r < 0 ? r + static_cast<i64>(p_) : r)];
    }
    Complex at_residue(u64 k) const noexcept { return table_[k]; }

private:
    u64 p_;
    std::vector<Complex> table_;
};

/// sum_{m in I} e_p(t m) via the geometric closed form; requires |t| <= (p-1)/2.
Complex interval_exp_sum(const Interval& interval, i64 t, const UnitRoots& roots);
Complex interval_exp_sum(const Interval& interval, i64 t, u64 p);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

/// sum_{1 <= |t| <= (p-1)/2} |sum_{m in I} e_p(t m)| against 2 p ln p.
BoundCheck est1_bound_check(const Interval& interval, u64 p);
BoundCheck est1_bound_check(const Interval& interval, const UnitRoots& roots);

/// Frequencies for the r+2 coordinates (x, y, y_1, ..., y_r) and the r map
/// values g_1, ..., g_r; every entry lies in [-(p-1)/2, (p-1)/2].
struct FrequencyVector {
    std::vector<i64> t;
    std::vector<i64> u;

    bool is_zero() const noexcept;
};

/// F_p-points of C_H with pole-free map values, coordinates in [0, p).
struct ShiftedCurvePoints {
    std::size_t r = 0;
    std::vector<u64> coords;     // (r+2) per point: x, y, y_1, ..., y_r
    std::vector<u64> map_values; // r per point: g(P, P_i)
    std::size_t poles_skipped = 0;

    std::size_t size() const noexcept { return coords.size() / (r + 2); }
};

/// Enumerates C_H, both square roots per coordinate. Requires p * 2^r <= 10^5.
ShiftedCurvePoints enumerate_shifted_curve(const HyperellipticCurve& curve, const ShiftSet& shifts,
                                           const RationalMapExpr& g);

/// sum over pole-free points of C_H of e_p(-sum u_j g_j - sum t_c coord_c).
Complex curve_exp_sum(const ShiftedCurvePoints& points, const FrequencyVector& freq, const UnitRoots& roots);
Complex curve_exp_sum(const HyperellipticCurve& curve, const ShiftSet& shifts, const RationalMapExpr& g,
                      const FrequencyVector& freq);

/// |curve_exp_sum| against D(D-1) sqrt(p) + D^2/2 with D = 2^r d. Throws
/// std::invalid_argument on the zero frequency.
BoundCheck bombieri_bound_check(const HyperellipticCurve& curve, const ShiftSet& shifts, const RationalMapExpr& g,
                                const FrequencyVector& freq);
BoundCheck bombieri_bound_check(const ShiftedCurvePoints& points, int curve_degree, const FrequencyVector& freq,
                                const UnitRoots& roots);

/// Evaluates the full orthogonality expansion of N(H) over the hypercube
/// [0,p) x I^{r+1} x J^r. Requires p <= 31 and r <= 1.
double reconstruct_N_via_dft(const HyperellipticCurve& curve, const ShiftSet& shifts, const Interval& i,
                             const Interval& j, const RationalMapExpr& g);

} // namespace curvegap
