#include "curvegap/poly_curve.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace curvegap;

namespace {

// Brute-force S_I: scan every y in [0, p) and keep x whose smaller root lies in I.
std::vector<CurvePoint> brute_S_I(const Polynomial& f, Interval I) {
    const PrimeModulus& m = f.modulus();
    const u64 p = m.value();
    std::vector<CurvePoint> out;
    for (u64 x = 0; x < p; ++x) {
        const u64 fx = f(x);
        for (u64 y = 0; y < p; ++y) {
            if (m.mul(y, y) != fx) continue;
            const u64 canon = std::min(y, p - y == p ? 0 : p - y);
            if (I.contains(canon)) out.push_back({x, canon});
            break;
        }
    }
    return out;
}

Polynomial random_poly(const PrimeModulus& m, int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<u64> c(0, m.value() - 1);
    std::vector<u64> coeffs(static_cast<std::size_t>(d) + 1);
    for (auto& v : coeffs) v = c(rng);
    if (coeffs.back() == 0) coeffs.back() = 1;
    return Polynomial(coeffs, m);
}

} // namespace

TEST(Polynomial, ParseEvaluateAndFormat) {
    const PrimeModulus m(7);
    const auto f = Polynomial::parse("1,0,0,1", m);
    EXPECT_EQ(f.degree(), 3);
    EXPECT_EQ(f(2), 2u);
    EXPECT_EQ(f(3), 0u);
    EXPECT_EQ(Polynomial(m)(5), 0u);
    EXPECT_EQ(Polynomial(m).degree(), -1);
    EXPECT_EQ(Polynomial::parse("1,0,0,0", m).degree(), 0);
    EXPECT_EQ(Polynomial::parse("-1,8", m).coefficients(), (std::vector<u64>{6, 1}));
    EXPECT_EQ(f(Residue(2, m)).value(), 2u);
    EXPECT_THROW(Polynomial::parse("1,,2", m), std::invalid_argument);
    EXPECT_THROW(Polynomial::parse("a", m), std::invalid_argument);
}

TEST(Polynomial, DivmodAndGcd) {
    const PrimeModulus m(13);
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        auto a = random_poly(m, 1 + k % 6, rng);
        auto b = random_poly(m, 1 + k % 3, rng);
        auto [q, r] = a.divmod(b);
        ASSERT_EQ(q * b + r, a);
        ASSERT_LT(r.degree(), b.degree());
        auto g = gcd(a * b, b);
        ASSERT_EQ(g, b.monic());
    }
    EXPECT_THROW(Polynomial::parse("1,1", m).divmod(Polynomial(m)), std::domain_error);
}

TEST(Polynomial, SquareDetection) {
    EXPECT_TRUE(is_square_in_closure(Polynomial::parse("0,0,1", PrimeModulus(7))));
    EXPECT_FALSE(is_square_in_closure(Polynomial::parse("1,0,0,1", PrimeModulus(7))));
    EXPECT_TRUE(is_square_in_closure(Polynomial::parse("1,0,2,0,1", PrimeModulus(5))));
    // constant times a square is a square in the closure
    EXPECT_TRUE(is_square_in_closure(Polynomial::parse("3,6,3", PrimeModulus(7))));
    EXPECT_FALSE(is_square_in_closure(Polynomial::parse("1,0,1", PrimeModulus(7))));
}

// Products g^2 h with h squarefree of positive degree are never squares; c g^2 always is.
TEST(PolynomialProperty, SquareClassification) {
    std::mt19937_64 rng(11);
    for (u64 p : {5ULL, 7ULL, 13ULL, 31ULL}) {
        const PrimeModulus m(p);
        for (int k = 0; k < 100; ++k) {
            auto g = random_poly(m, 1 + k % 3, rng);
            const u64 c = 1 + rng() % (p - 1);
            auto sq = Polynomial(std::vector<u64>{c}, m) * g * g;
            auto lin = Polynomial(std::vector<u64>{rng() % p, 1}, m);
            if (static_cast<u64>((sq * lin).degree()) >= p) continue;
            ASSERT_TRUE(is_square_in_closure(sq)) << sq.to_string();
            ASSERT_FALSE(is_square_in_closure(sq * lin)) << (sq * lin).to_string();
            auto dec = squarefree_decomposition(sq * lin);
            Polynomial rebuilt(std::vector<u64>{dec.unit}, m);
            for (std::size_t i = 0; i < dec.factors.size(); ++i)
                for (std::size_t e = 0; e <= i; ++e) rebuilt = rebuilt * dec.factors[i];
            ASSERT_EQ(rebuilt, sq * lin);
        }
    }
}

TEST(Curve, ConstructionRejectsSquares) {
    const PrimeModulus m(7);
    try {
        HyperellipticCurve c(Polynomial::parse("0,0,1", m));
        FAIL();
    } catch (const SquarePolynomial& e) {
        EXPECT_NE(std::string(e.what()).find("f is a square"), std::string::npos);
        EXPECT_FALSE(e.certificate().empty());
    }
    EXPECT_THROW(HyperellipticCurve(Polynomial::parse("3", m)), std::invalid_argument);
    EXPECT_THROW(HyperellipticCurve(Polynomial::parse("1,0,0,0,0,0,0,1", m)), std::invalid_argument);
}

TEST(Curve, PointCounts) {
    const PrimeModulus m(7);
    EXPECT_EQ(affine_point_count(HyperellipticCurve(Polynomial::parse("1,0,0,1", m))), 11u);
    EXPECT_EQ(affine_point_count(HyperellipticCurve(Polynomial::parse("0,1", m))), 7u);
}

TEST(Curve, SIExamples) {
    const PrimeModulus m(7);
    HyperellipticCurve c(Polynomial::parse("1,0,0,1", m));
    EXPECT_EQ(compute_S_I(c, {0, 4}).xs(), (std::vector<u64>{0, 1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(compute_S_I(c, {1, 4}).xs(), (std::vector<u64>{0, 1, 2, 4}));
    EXPECT_TRUE(compute_S_I(c, {2, 2}).empty());
    EXPECT_THROW(compute_S_I(c, {0, 5}), std::invalid_argument);
    auto dev = cardinality_deviation(compute_S_I(c, {0, 4}));
    EXPECT_EQ(dev.observed, 7u);
    EXPECT_EQ(dev.main_term, 4u);
    auto empty = cardinality_deviation(compute_S_I(c, {0, 0}));
    EXPECT_EQ(empty.observed, 0u);
    EXPECT_EQ(empty.main_term, 0u);
    auto s = compute_S_I(c, {0, 4});
    EXPECT_EQ(s.y_at(3), std::optional<u64>(0));
    EXPECT_EQ(s.y_at(0), std::optional<u64>(1));
}

TEST(Interval, ParseAndChecks) {
    EXPECT_EQ(Interval::parse("3:9"), (Interval{3, 9}));
    EXPECT_THROW(Interval::parse("9:3"), std::invalid_argument);
    EXPECT_THROW(Interval::parse("3"), std::invalid_argument);
    EXPECT_THROW((Interval{0, 8}).check_within(7, "J"), std::invalid_argument);
    EXPECT_TRUE((Interval{2, 5}).contains(4));
    EXPECT_FALSE((Interval{2, 5}).contains(5));
}

// S_I equals the brute-force enumeration for random curves and intervals, at any thread count.
TEST(CurveProperty, SIMatchesBruteForce) {
    std::mt19937_64 rng(5);
    for (u64 p : {11ULL, 13ULL, 17ULL, 41ULL, 97ULL, 193ULL}) {
        const PrimeModulus m(p);
        for (int k = 0; k < 20; ++k) {
            auto f = random_poly(m, 3 + k % 3, rng);
            if (is_square_in_closure(f)) continue;
            HyperellipticCurve c(f);
            const u64 lo = rng() % (m.half() + 1);
            const u64 hi = lo + rng() % (m.half() + 2 - lo);
            auto expect = brute_S_I(f, {lo, hi});
            ASSERT_EQ(compute_S_I(c, {lo, hi}, 1).entries(), expect);
            ASSERT_EQ(compute_S_I(c, {lo, hi}, 3).entries(), expect);
            u64 pts = 0;
            for (u64 x = 0; x < p; ++x) pts += 1 + m.legendre(f(x));
            ASSERT_EQ(affine_point_count(c, 2), pts);
        }
    }
}

TEST(Curve, LargePrimeCardinality) {
    const PrimeModulus m(1000003);
    HyperellipticCurve c(Polynomial::parse("1,1,0,1", m));
    auto dev = cardinality_deviation(compute_S_I(c, {0, 10000}));
    EXPECT_LT(std::abs(static_cast<double>(dev.observed) - 10000.0), dev.bound);
    EXPECT_NEAR(dev.bound, 4.0 * 3 * 2 * std::sqrt(1000003.0) * std::pow(std::log(1000003.0), 2), 1e-6);
}
