#include "curvegap/expsum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace curvegap {

namespace {

// (a * b) mod p in [0, p) for signed a, b.
i64 signed_mulmod(i64 a, i64 b, u64 p) {
    const auto prod = static_cast<__int128>(a) * b % static_cast<__int128>(p);
    return static_cast<i64>(prod < 0 ? prod + static_cast<__int128>(p) : prod);
}

} // namespace

UnitRoots::UnitRoots(u64 p) : p_(p), table_(p) {
    if (p == 0) throw std::invalid_argument("UnitRoots needs p > 0");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (u64 k = 0; k < p; ++k) table_[k] = std::polar(1.0, step * static_cast<double>(k));
}

Complex interval_exp_sum(const Interval& interval, i64 t, const UnitRoots& roots) {
    const auto half = static_cast<i64>((roots.p() - 1) / 2);
    if (t < -half || t > half) throw std::invalid_argument("frequency outside [-(p-1)/2, (p-1)/2]");
    if (t == 0) return {static_cast<double>(interval.size()), 0.0};
    const u64 p = roots.p();
    const i64 tl = signed_mulmod(t, static_cast<i64>(interval.lo % p), p);
    const i64 th = signed_mulmod(t, static_cast<i64>(interval.size() % p), p);
    return roots(tl) * (Complex(1.0) - roots(th)) / (Complex(1.0) - roots(t));
}

Complex interval_exp_sum(const Interval& interval, i64 t, u64 p) {
    const auto half = static_cast<i64>((p - 1) / 2);
    if (t < -half || t > half) throw std::invalid_argument("frequency outside [-(p-1)/2, (p-1)/2]");
    if (t == 0) return {static_cast<double>(interval.size()), 0.0};
    const auto pi = static_cast<i64>(p);
    auto e = [&](i64 k) {
        i64 r = k % pi;
        if (r < 0) r += pi;
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
    };
    const i64 tl = signed_mulmod(t, static_cast<i64>(interval.lo % p), p);
    const i64 th = signed_mulmod(t, static_cast<i64>(interval.size() % p), p);
    return e(tl) * (Complex(1.0) - e(th)) / (Complex(1.0) - e(t));
}

BoundCheck est1_bound_check(const Interval& interval, const UnitRoots& roots) {
    const auto half = static_cast<i64>((roots.p() - 1) / 2);
    BoundCheck out;
    for (i64 t = 1; t <= half; ++t)
        out.lhs += std::abs(interval_exp_sum(interval, t, roots)) + std::abs(interval_exp_sum(interval, -t, roots));
    const double p = static_cast<double>(roots.p());
    out.rhs = 2.0 * p * std::log(p);
    out.ok = out.lhs <= out.rhs;
    return out;
}

BoundCheck est1_bound_check(const Interval& interval, u64 p) {
    if (p < 3) throw std::invalid_argument("est1_bound_check needs p >= 3");
    return est1_bound_check(interval, UnitRoots(p));
}

bool FrequencyVector::is_zero() const noexcept {
    for (i64 v : t)
        if (v != 0) return false;
    for (i64 v : u)
        if (v != 0) return false;
    return true;
}

namespace {

constexpr u64 kShiftedCurveBudget = 100000;

std::vector<u64> roots_of(const PrimeModulus& m, u64 value) {
    auto y = m.sqrt(value);
    if (!y) return {};
    if (*y == 0) return {0};
    return {*y, m.neg(*y)};
}

void check_frequencies(const FrequencyVector& freq, std::size_t r, u64 p) {
    if (freq.t.size() != r + 2 || freq.u.size() != r)
        throw std::invalid_argument("frequency vector needs r+2 coordinate and r map entries");
    const auto half = static_cast<i64>((p - 1) / 2);
    for (const auto* v : {&freq.t, &freq.u})
        for (i64 f : *v)
            if (f < -half || f > half) throw std::invalid_argument("frequency outside [-(p-1)/2, (p-1)/2]");
}

} // namespace

ShiftedCurvePoints enumerate_shifted_curve(const HyperellipticCurve& curve, const ShiftSet& shifts,
                                           const RationalMapExpr& g) {
    const std::size_t r = shifts.size();
    const u64 p = curve.p();
    if (r >= 17 || (p << r) > kShiftedCurveBudget)
        throw std::invalid_argument("shifted curve too large to enumerate (need p * 2^r <= 100000)");
    const auto& m = curve.modulus();

    ShiftedCurvePoints out;
    out.r = r;
    std::vector<std::vector<u64>> roots(r + 1);
    std::vector<u64> tuple(r + 2);
    std::vector<u64> values(r);
    for (u64 x = 0; x < p; ++x) {
        roots[0] = roots_of(m, curve.f()(x));
        bool any = !roots[0].empty();
        for (std::size_t i = 0; i < r && any; ++i) {
            roots[i + 1] = roots_of(m, curve.f()(m.add(x, shifts.shifts()[i])));
            any = !roots[i + 1].empty();
        }
        if (!any) continue;

        // odometer over the root choices of y, y_1, ..., y_r
        std::vector<std::size_t> idx(r + 1, 0);
        while (true) {
            tuple[0] = x;
            for (std::size_t c = 0; c <= r; ++c) tuple[c + 1] = roots[c][idx[c]];
            bool pole = false;
            for (std::size_t i = 0; i < r && !pole; ++i) {
                MapValue v = evaluate(g, m, x, tuple[1], m.add(x, shifts.shifts()[i]), tuple[i + 2]);
                if (v.is_pole()) pole = true;
                else values[i] = v.value();
            }
            if (pole) {
                ++out.poles_skipped;
            } else {
                out.coords.insert(out.coords.end(), tuple.begin(), tuple.end());
                out.map_values.insert(out.map_values.end(), values.begin(), values.end());
            }
            std::size_t c = 0;
            while (c <= r && ++idx[c] == roots[c].size()) idx[c++] = 0;
            if (c > r) break;
        }
    }
    return out;
}

Complex curve_exp_sum(const ShiftedCurvePoints& points, const FrequencyVector& freq, const UnitRoots& roots) {
    const std::size_t r = points.r;
    const u64 p = roots.p();
    check_frequencies(freq, r, p);
    const PrimeModulus m(p);
    std::vector<u64> tc(r + 2), uc(r);
    for (std::size_t c = 0; c < r + 2; ++c) tc[c] = m.reduce(freq.t[c]);
    for (std::size_t c = 0; c < r; ++c) uc[c] = m.reduce(freq.u[c]);

    Complex sum = 0.0;
    const std::size_t n = points.size();
    for (std::size_t k = 0; k < n; ++k) {
        u64 phase = 0;
        for (std::size_t c = 0; c < r + 2; ++c) phase = m.add(phase, m.mul(tc[c], points.coords[k * (r + 2) + c]));
        for (std::size_t c = 0; c < r; ++c) phase = m.add(phase, m.mul(uc[c], points.map_values[k * r + c]));
        sum += roots.at_residue(m.neg(phase));
    }
    return sum;
}

Complex curve_exp_sum(const HyperellipticCurve& curve, const ShiftSet& shifts, const RationalMapExpr& g,
                      const FrequencyVector& freq) {
    check_frequencies(freq, shifts.size(), curve.p());
    return curve_exp_sum(enumerate_shifted_curve(curve, shifts, g), freq, UnitRoots(curve.p()));
}

BoundCheck bombieri_bound_check(const ShiftedCurvePoints& points, int curve_degree, const FrequencyVector& freq,
                                const UnitRoots& roots) {
    if (freq.is_zero()) throw std::invalid_argument("Bombieri check needs a nonzero frequency");
    const double big_d = std::ldexp(static_cast<double>(curve_degree), static_cast<int>(points.r));
    BoundCheck out;
    out.lhs = std::abs(curve_exp_sum(points, freq, roots));
    out.rhs = big_d * (big_d - 1.0) * std::sqrt(static_cast<double>(roots.p())) + 0.5 * big_d * big_d;
    out.ok = out.lhs <= out.rhs;
    return out;
}

BoundCheck bombieri_bound_check(const HyperellipticCurve& curve, const ShiftSet& shifts, const RationalMapExpr& g,
                                const FrequencyVector& freq) {
    if (freq.is_zero()) throw std::invalid_argument("Bombieri check needs a nonzero frequency");
    check_frequencies(freq, shifts.size(), curve.p());
    return bombieri_bound_check(enumerate_shifted_curve(curve, shifts, g), curve.degree(), freq,
                                UnitRoots(curve.p()));
}

double reconstruct_N_via_dft(const HyperellipticCurve& curve, const ShiftSet& shifts, const Interval& i,
                             const Interval& j, const RationalMapExpr& g) {
    const u64 p = curve.p();
    const std::size_t r = shifts.size();
    if (p > 31 || r > 1) throw std::invalid_argument("reconstruct_N_via_dft limited to p <= 31, r <= 1");
    i.check_within(p, "interval I");
    j.check_within(p, "interval J");

    const UnitRoots roots(p);
    const ShiftedCurvePoints points = enumerate_shifted_curve(curve, shifts, g);
    const auto half = static_cast<i64>((p - 1) / 2);
    const std::size_t width = p;

    // Interval sums per axis: the r+2 coordinates, then the r map values.
    const std::size_t axes = 2 * r + 2;
    std::vector<Interval> axis_interval(axes, i);
    axis_interval[0] = Interval::full(p);
    for (std::size_t c = r + 2; c < axes; ++c) axis_interval[c] = j;
    std::vector<std::vector<Complex>> axis_sum(axes, std::vector<Complex>(width));
    for (std::size_t c = 0; c < axes; ++c)
        for (i64 t = -half; t <= half; ++t)
            axis_sum[c][static_cast<std::size_t>(t + half)] = interval_exp_sum(axis_interval[c], t, roots);

    FrequencyVector freq;
    freq.t.assign(r + 2, 0);
    freq.u.assign(r, 0);
    std::vector<std::size_t> idx(axes, 0);
    Complex total = 0.0;
    while (true) {
        Complex weight = 1.0;
        for (std::size_t c = 0; c < axes; ++c) weight *= axis_sum[c][idx[c]];
        if (weight != Complex(0.0)) {
            for (std::size_t c = 0; c < r + 2; ++c) freq.t[c] = static_cast<i64>(idx[c]) - half;
            for (std::size_t c = 0; c < r; ++c) freq.u[c] = static_cast<i64>(idx[r + 2 + c]) - half;
            total += weight * curve_exp_sum(points, freq, roots);
        }
        std::size_t c = 0;
        while (c < axes && ++idx[c] == width) idx[c++] = 0;
        if (c == axes) break;
    }
    return total.real() / std::pow(static_cast<double>(p), static_cast<double>(axes));
}

} // namespace curvegap
