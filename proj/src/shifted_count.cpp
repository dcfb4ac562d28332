#include "curvegap/shifted_count.hpp"

#include "curvegap/parallel.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace curvegap {

ShiftedCurveSpec::ShiftedCurveSpec(HyperellipticCurve curve, ShiftSet shifts)
    : curve_(std::move(curve)), shifts_(std::move(shifts)) {
    if (!(curve_.modulus() == shifts_.modulus()))
        throw ModulusMismatch(curve_.p(), shifts_.modulus().value());
}

u64 ShiftedCurveSpec::degree() const noexcept {
    return (u64{1} << shifts_.size()) * static_cast<u64>(curve_.degree());
}

bool translate_hit(const XCoordinateSet& s, u64 x, u64 y, u64 h, const Interval& j, const RationalMapExpr& g) {
    const auto& m = s.curve().modulus();
    const u64 x0 = m.add(x, h);
    auto y0 = s.y_at(x0);
    if (!y0) return false;
    MapValue v = evaluate(g, m, x, y, x0, *y0);
    return !v.is_pole() && j.contains(v.value());
}

namespace {

template <class Pred>
u64 count_base_points(const XCoordinateSet& s, unsigned threads, Pred pred) {
    const auto& pts = s.entries();
    auto partial = map_chunks(pts.size(), threads, [&](u64 begin, u64 end) {
        u64 n = 0;
        for (u64 k = begin; k < end; ++k)
            if (pred(pts[k])) ++n;
        return n;
    });
    return std::accumulate(partial.begin(), partial.end(), u64{0});
}

} // namespace

u64 count_N_H(const XCoordinateSet& s, const ShiftSet& h, const Interval& j, const RationalMapExpr& g,
              unsigned threads) {
    j.check_within(s.p(), "interval J");
    return count_base_points(s, threads, [&](const CurvePoint& pt) {
        for (u64 shift : h.shifts())
            if (!translate_hit(s, pt.x, pt.y, shift, j, g)) return false;
        return true;
    });
}

u64 count_N_H(const HyperellipticCurve& curve, const ShiftSet& h, const Interval& i, const Interval& j,
              const RationalMapExpr& g, unsigned threads) {
    return count_N_H(compute_S_I(curve, i, threads), h, j, g, threads);
}

u64 count_N_AB_direct(const XCoordinateSet& s, const ShiftSet& a, const ShiftSet& b, const Interval& j,
                      const RationalMapExpr& g, unsigned threads) {
    (void)a.disjoint_union(b);
    j.check_within(s.p(), "interval J");
    return count_base_points(s, threads, [&](const CurvePoint& pt) {
        for (u64 shift : a.shifts())
            if (!translate_hit(s, pt.x, pt.y, shift, j, g)) return false;
        for (u64 shift : b.shifts())
            if (translate_hit(s, pt.x, pt.y, shift, j, g)) return false;
        return true;
    });
}

std::int64_t count_N_AB_inclusion_exclusion(const XCoordinateSet& s, const ShiftSet& a, const ShiftSet& b,
                                            const Interval& j, const RationalMapExpr& g, unsigned threads) {
    (void)a.disjoint_union(b);
    const std::size_t nb = b.size();
    if (nb > kMaxInclusionExclusionTerms)
        throw std::invalid_argument("inclusion-exclusion limited to |B| <= 20");
    const auto& m = s.curve().modulus();
    std::int64_t total = 0;
    for (u64 mask = 0; mask < (u64{1} << nb); ++mask) {
        std::vector<i64> c;
        for (std::size_t k = 0; k < nb; ++k)
            if (mask >> k & 1) c.push_back(static_cast<i64>(b.shifts()[k]));
        ShiftSet with_c = a.disjoint_union(ShiftSet(c, m));
        const auto n = static_cast<std::int64_t>(count_N_H(s, with_c, j, g, threads));
        total += (std::popcount(mask) % 2 == 0) ? n : -n;
    }
    return total;
}

namespace {

Rational rational_pow(const Rational& base, std::size_t e) {
    Rational out = 1;
    for (std::size_t k = 0; k < e; ++k) out *= base;
    return out;
}

} // namespace

Prediction predicted_N_H(u64 p, int d, std::size_t r, u64 i_size, u64 j_size) {
    using boost::multiprecision::cpp_int;
    Rational main = rational_pow(Rational(cpp_int(i_size)), r + 1) * rational_pow(Rational(cpp_int(j_size)), r) /
                    rational_pow(Rational(cpp_int(p)), 2 * r);
    const double lp = std::log(static_cast<double>(p));
    const double two_r = std::ldexp(1.0, static_cast<int>(r));
    const double bound = std::ldexp(1.0, static_cast<int>(3 * r + 2)) * d * (two_r * d - 1.0) *
                         std::sqrt(static_cast<double>(p)) * std::pow(lp, static_cast<double>(2 * r + 2));
    return {main, bound};
}

Prediction predicted_N_AB(u64 p, int d, std::size_t a_size, std::size_t b_size, u64 i_size, u64 j_size) {
    using boost::multiprecision::cpp_int;
    const Rational q = Rational(cpp_int(i_size) * cpp_int(j_size), cpp_int(p) * cpp_int(p));
    Rational main = Rational(cpp_int(i_size)) * rational_pow(q, a_size) * rational_pow(1 - q, b_size);
    const double lp = std::log(static_cast<double>(p));
    const std::size_t n = a_size + b_size;
    const double bound = std::ldexp(1.0, static_cast<int>(3 * a_size + 4 * b_size + 1)) * d *
                         (std::ldexp(1.0, static_cast<int>(n)) * d - 1.0) * std::sqrt(static_cast<double>(p)) *
                         std::pow(lp, static_cast<double>(2 * n + 2));
    return {main, bound};
}

std::vector<std::string> hypothesis_flags(const HyperellipticCurve& curve, const RationalMapExpr& g,
                                          const Interval& i, std::size_t r) {
    std::vector<std::string> flags;
    const int d = curve.degree();
    const int dg = g.degree().value();
    if (dg < 1 || dg >= d)
        flags.push_back("deg g = " + std::to_string(dg) + " outside [1, " + std::to_string(d) + ")");
    const double p = static_cast<double>(curve.p());
    const double lp = std::log(p);
    if (lp > 1.0 && static_cast<double>(i.size()) < p / std::log(lp)) flags.push_back("|I| < p / ln ln p");
    if (lp > 1.0 && static_cast<double>(r) * std::log(lp) >= lp) flags.push_back("r not small against ln p / ln ln p");
    return flags;
}

} // namespace curvegap
