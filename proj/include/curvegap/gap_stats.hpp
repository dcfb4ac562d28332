// Spacing statistics of S_I: wrapped gaps, the proportions mu(lambda) and
// mu(lambda, alpha, beta), the window counts P_k(t), and the binomial and
// Poisson models they are compared against.
#pragma once

#include "curvegap/poly_curve.hpp"
#include "curvegap/rational_map.hpp"
#include "curvegap/shifted_count.hpp"

#include <span>
#include <vector>

namespace curvegap {

struct GapReport {
    std::size_t m = 0;
    std::vector<u64> gaps; // gaps[i] = x_{i+1} - x_i, last one wraps to x_1 + p
    Rational mean_gap;     // p / m
    std::vector<double> lambda_grid;
    std::vector<double> mu_values;
};

/// Throws std::invalid_argument on an empty set.
GapReport gaps_with_wrap(const XCoordinateSet& s, std::span<const double> lambdas = {});

/// Fraction of gaps >= lambda p / |I|.
double mu(const XCoordinateSet& s, double lambda);

/// Fraction of consecutive pairs (P_i, P_{i+1}) whose gap is >= lambda p / |I|
/// and with g(P_i, P_{i+1}) a pole-free value in J.
double mu_distorted(const XCoordinateSet& s, double lambda, const Interval& j, const RationalMapExpr& g);

double binomial_model(double t, std::int64_t k, double q);
double poisson_model(double lambda_prime, std::int64_t k);

/// Window counts for P_k(t): counts[k] base points of S_I whose window
/// (x, x + floor(t)] holds exactly k hits.
struct PkTable {
    double t = 0.0;
    u64 window = 0;
    std::size_t m = 0;
    std::vector<u64> counts; // k = 0..window
    double lambda = 0.0;     // t |I| / p
    double lambda_prime = 0.0;
    double q = 0.0;          // |I||J| / p^2

    double empirical(std::size_t k) const;
    double binomial(std::size_t k) const { return k > window ? 0.0 : binomial_model(t, static_cast<std::int64_t>(k), q); }
    double poisson(std::size_t k) const { return poisson_model(lambda_prime, static_cast<std::int64_t>(k)); }

    std::vector<double> empirical_values(std::size_t kmax) const;
    std::vector<double> binomial_values(std::size_t kmax) const;
    std::vector<double> poisson_values(std::size_t kmax) const;
};

/// Requires 1 <= t < p and a nonempty S_I.
PkTable pk_table(const XCoordinateSet& s, const Interval& j, const RationalMapExpr& g, double t,
                 unsigned threads = 1);

double p_k_t(const XCoordinateSet& s, const Interval& j, const RationalMapExpr& g, double t, std::int64_t k,
             unsigned threads = 1);

struct DistributionDistance {
    double sup_norm = 0.0;
    double total_variation = 0.0; // half L1 over k <= kmax
};

DistributionDistance distribution_distance(std::span<const double> empirical, std::span<const double> model,
                                           std::size_t kmax);

struct BigIntervalResult {
    u64 interval_size = 0;
    double observed_p0 = 0.0;
    double model = 0.0;             // (1 - (beta - alpha)/2)^floor(t)
    double poisson_reference = 0.0; // e^{-t |I| / p}
};

/// P_0(t) with I = [0, (p-1)/2] (the largest admissible interval).
BigIntervalResult big_interval_regime(const HyperellipticCurve& curve, double t, const Interval& j,
                                      const RationalMapExpr& g, unsigned threads = 1);

} // namespace curvegap
