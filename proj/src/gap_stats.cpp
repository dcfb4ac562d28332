#include "curvegap/gap_stats.hpp"

#include "curvegap/parallel.hpp"

#include <cmath>

namespace curvegap {

namespace {

void require_points(const XCoordinateSet& s) {
    if (s.empty()) throw std::invalid_argument("no points in S_I");
}

bool gap_reaches(u64 gap, double lambda, u64 i_size, u64 p) {
    return static_cast<long double>(gap) * static_cast<long double>(i_size) >=
           static_cast<long double>(lambda) * static_cast<long double>(p);
}

u64 wrapped_gap(const XCoordinateSet& s, std::size_t i) {
    const auto& e = s.entries();
    return i + 1 < e.size() ? e[i + 1].x - e[i].x : e.front().x + s.p() - e[i].x;
}

} // namespace

GapReport gaps_with_wrap(const XCoordinateSet& s, std::span<const double> lambdas) {
    require_points(s);
    GapReport out;
    out.m = s.size();
    out.gaps.reserve(out.m);
    for (std::size_t i = 0; i < out.m; ++i) out.gaps.push_back(wrapped_gap(s, i));
    out.mean_gap = Rational(boost::multiprecision::cpp_int(s.p()), boost::multiprecision::cpp_int(out.m));
    out.lambda_grid.assign(lambdas.begin(), lambdas.end());
    for (double l : lambdas) out.mu_values.push_back(mu(s, l));
    return out;
}

double mu(const XCoordinateSet& s, double lambda) {
    require_points(s);
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (gap_reaches(wrapped_gap(s, i), lambda, s.interval().size(), s.p())) ++n;
    return static_cast<double>(n) / static_cast<double>(s.size());
}

double mu_distorted(const XCoordinateSet& s, double lambda, const Interval& j, const RationalMapExpr& g) {
    require_points(s);
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    j.check_within(s.p(), "interval J");
    const auto& e = s.entries();
    const auto& m = s.curve().modulus();
    std::size_t n = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!gap_reaches(wrapped_gap(s, i), lambda, s.interval().size(), s.p())) continue;
        const CurvePoint& a = e[i];
        const CurvePoint& b = e[(i + 1) % e.size()];
        MapValue v = evaluate(g, m, a.x, a.y, b.x, b.y);
        if (!v.is_pole() && j.contains(v.value())) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(e.size());
}

double binomial_model(double t, std::int64_t k, double q) {
    if (t < 0 || q < 0 || q > 1) throw std::invalid_argument("binomial_model needs t >= 0 and 0 <= q <= 1");
    const auto n = static_cast<std::int64_t>(std::floor(t));
    if (k < 0 || k > n) throw std::invalid_argument("binomial_model needs 0 <= k <= floor(t)");
    if (q == 0.0) return k == 0 ? 1.0 : 0.0;
    if (q == 1.0) return k == n ? 1.0 : 0.0;
    const double dn = static_cast<double>(n), dk = static_cast<double>(k);
    const double log_choose = std::lgamma(dn + 1) - std::lgamma(dk + 1) - std::lgamma(dn - dk + 1);
    return std::exp(log_choose + dk * std::log(q) + (dn - dk) * std::log1p(-q));
}

double poisson_model(double lambda_prime, std::int64_t k) {
    if (lambda_prime < 0) throw std::invalid_argument("poisson_model needs lambda >= 0");
    if (k < 0) return 0.0;
    if (lambda_prime == 0.0) return k == 0 ? 1.0 : 0.0;
    const double dk = static_cast<double>(k);
    return std::exp(-lambda_prime + dk * std::log(lambda_prime) - std::lgamma(dk + 1));
}

double PkTable::empirical(std::size_t k) const {
    if (k >= counts.size() || m == 0) return 0.0;
    return static_cast<double>(counts[k]) / static_cast<double>(m);
}

std::vector<double> PkTable::empirical_values(std::size_t kmax) const {
    std::vector<double> v;
    for (std::size_t k = 0; k <= kmax; ++k) v.push_back(empirical(k));
    return v;
}

std::vector<double> PkTable::binomial_values(std::size_t kmax) const {
    std::vector<double> v;
    for (std::size_t k = 0; k <= kmax; ++k) v.push_back(binomial(k));
    return v;
}

std::vector<double> PkTable::poisson_values(std::size_t kmax) const {
    std::vector<double> v;
    for (std::size_t k = 0; k <= kmax; ++k) v.push_back(poisson(k));
    return v;
}

PkTable pk_table(const XCoordinateSet& s, const Interval& j, const RationalMapExpr& g, double t, unsigned threads) {
    require_points(s);
    const u64 p = s.p();
    if (!(t >= 1.0) || t >= static_cast<double>(p)) throw std::invalid_argument("P_k(t) needs 1 <= t < p");
    j.check_within(p, "interval J");

    PkTable out;
    out.t = t;
    out.window = static_cast<u64>(std::floor(t));
    out.m = s.size();
    const double dp = static_cast<double>(p);
    out.lambda = t * static_cast<double>(s.interval().size()) / dp;
    out.lambda_prime = out.lambda * static_cast<double>(j.size()) / dp;
    out.q = static_cast<double>(s.interval().size()) * static_cast<double>(j.size()) / (dp * dp);

    const auto& e = s.entries();
    const auto& m = s.curve().modulus();
    const std::size_t n = e.size();
    const u64 window = out.window;
    auto partial = map_chunks(n, threads, [&](u64 begin, u64 end) {
        std::vector<u64> hist(window + 1, 0);
        for (u64 i = begin; i < end; ++i) {
            const CurvePoint& base = e[i];
            u64 hits = 0;
            for (std::size_t step = 1; step < n; ++step) {
                const CurvePoint& other = e[(i + step) % n];
                const u64 dist = other.x > base.x ? other.x - base.x : other.x + p - base.x;
                if (dist > window) break;
                MapValue v = evaluate(g, m, base.x, base.y, other.x, other.y);
                if (!v.is_pole() && j.contains(v.value())) ++hits;
            }
            ++hist[hits];
        }
        return hist;
    });
    out.counts.assign(window + 1, 0);
    for (const auto& h : partial)
        for (std::size_t k = 0; k < h.size(); ++k) out.counts[k] += h[k];
    return out;
}

double p_k_t(const XCoordinateSet& s, const Interval& j, const RationalMapExpr& g, double t, std::int64_t k,
             unsigned threads) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    return pk_table(s, j, g, t, threads).empirical(static_cast<std::size_t>(k));
}

DistributionDistance distribution_distance(std::span<const double> empirical, std::span<const double> model,
                                           std::size_t kmax) {
    DistributionDistance out;
    double l1 = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
        const double a = k < empirical.size() ? empirical[k] : 0.0;
        const double b = k < model.size() ? model[k] : 0.0;
        const double diff = std::abs(a - b);
        out.sup_norm = std::max(out.sup_norm, diff);
        l1 += diff;
    }
    out.total_variation = 0.5 * l1;
    return out;
}

BigIntervalResult big_interval_regime(const HyperellipticCurve& curve, double t, const Interval& j,
                                      const RationalMapExpr& g, unsigned threads) {
    const u64 p = curve.p();
    const Interval big{0, curve.modulus().half() + 1};
    XCoordinateSet s = compute_S_I(curve, big, threads);
    PkTable table = pk_table(s, j, g, t, threads);
    BigIntervalResult out;
    out.interval_size = big.size();
    out.observed_p0 = table.empirical(0);
    const double width = static_cast<double>(j.size()) / static_cast<double>(p);
    out.model = std::pow(1.0 - 0.5 * width, std::floor(t));
    out.poisson_reference = std::exp(-t * static_cast<double>(big.size()) / static_cast<double>(p));
    return out;
}

} // namespace curvegap
