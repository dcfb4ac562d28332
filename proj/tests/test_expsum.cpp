#include "curvegap/expsum.hpp"
#include "curvegap/shifted_count.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace curvegap;

namespace {

Complex e_p(double k, double p) { return std::polar(1.0, 2.0 * std::numbers::pi * k / p); }

Complex direct_interval_sum(Interval I, i64 t, u64 p) {
    Complex s = 0.0;
    for (u64 m = I.lo; m < I.hi; ++m) s += e_p(static_cast<double>((static_cast<i64>(m) * t) % static_cast<i64>(p)), p);
    return s;
}

HyperellipticCurve random_curve(const PrimeModulus& m, int d, std::mt19937_64& rng) {
    while (true) {
        std::vector<u64> c(static_cast<std::size_t>(d) + 1);
        for (auto& v : c) v = rng() % m.value();
        if (c.back() == 0) c.back() = 1;
        Polynomial f(c, m);
        if (!is_square_in_closure(f)) return HyperellipticCurve(f);
    }
}

} // namespace

TEST(ExpSum, IntervalSumExamples) {
    EXPECT_EQ(interval_exp_sum({3, 10}, 0, 13), Complex(7.0, 0.0));
    for (i64 t : {1, -1, 5, -6}) EXPECT_LT(std::abs(interval_exp_sum({0, 13}, t, 13)), 1e-9 * 13);
    EXPECT_THROW(interval_exp_sum({0, 3}, 7, 13), std::invalid_argument);
    UnitRoots roots(13);
    EXPECT_LT(std::abs(roots(13) - Complex(1.0)), 1e-12);
    EXPECT_LT(std::abs(roots(-1) - e_p(12, 13)), 1e-12);
}

// Closed form against direct summation, with both table and table-free paths.
TEST(ExpSumProperty, IntervalSumMatchesDirect) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 2000; ++k) {
        const u64 p = PrimeModulus::next_at_least(3 + rng() % 197).value();
        if (p > 199) continue;
        const u64 lo = rng() % (p + 1);
        const Interval I{lo, lo + rng() % (p + 1 - lo)};
        const auto half = static_cast<i64>((p - 1) / 2);
        const i64 t = static_cast<i64>(rng() % (2 * half + 1)) - half;
        const Complex want = direct_interval_sum(I, t, p);
        ASSERT_LT(std::abs(interval_exp_sum(I, t, p) - want), 1e-9 * std::max<double>(1.0, I.size()));
        ASSERT_LT(std::abs(interval_exp_sum(I, t, UnitRoots(p)) - want), 1e-9 * std::max<double>(1.0, I.size()));
    }
}

// (1/p) sum_t |S(I,t)|^2 = |I|.
TEST(ExpSumProperty, Parseval) {
    for (u64 p : {3ULL, 13ULL, 101ULL, 199ULL}) {
        UnitRoots roots(p);
        const auto half = static_cast<i64>((p - 1) / 2);
        for (u64 lo = 0; lo < p; lo += 7)
            for (u64 hi = lo; hi <= p; hi += 5) {
                double total = 0.0;
                for (i64 t = -half; t <= half; ++t) total += std::norm(interval_exp_sum({lo, hi}, t, roots));
                ASSERT_NEAR(total / static_cast<double>(p), static_cast<double>(hi - lo), 1e-6 * std::max<u64>(1, hi - lo));
            }
    }
}

TEST(ExpSum, IntervalBoundCheck) {
    auto empty = est1_bound_check({5, 5}, 13);
    EXPECT_EQ(empty.lhs, 0.0);
    EXPECT_TRUE(empty.ok);
    EXPECT_LT(est1_bound_check({0, 101}, 101).lhs, 1e-6);
    EXPECT_NEAR(est1_bound_check({0, 1}, 101).rhs, 2.0 * 101 * std::log(101.0), 1e-9);
    for (u64 p : {3ULL, 5ULL, 7ULL, 31ULL, 97ULL})
        for (u64 lo = 0; lo <= p; ++lo)
            for (u64 hi = lo; hi <= p; ++hi) ASSERT_TRUE(est1_bound_check({lo, hi}, p).ok) << p << " " << lo << " " << hi;
}

TEST(ExpSum, CurveSumBasics) {
    const PrimeModulus m(31);
    HyperellipticCurve c(Polynomial::parse("1,0,0,1", m));
    const auto xc = RationalMapExpr::builtin("xcoord");
    const auto ell = RationalMapExpr::builtin("ell_diff");

    FrequencyVector zero0{{0, 0}, {}};
    EXPECT_NEAR(curve_exp_sum(c, ShiftSet(m), xc, zero0).real(), static_cast<double>(affine_point_count(c)), 1e-9);

    const ShiftSet one(std::vector<i64>{1}, m);
    auto pts = enumerate_shifted_curve(c, one, ell);
    FrequencyVector zero1{{0, 0, 0}, {0}};
    auto s0 = curve_exp_sum(c, one, ell, zero1);
    EXPECT_NEAR(s0.real(), static_cast<double>(pts.size()), 1e-9);
    EXPECT_NEAR(s0.imag(), 0.0, 1e-9);

    FrequencyVector f{{3, -2, 5}, {7}}, neg{{-3, 2, -5}, {-7}};
    EXPECT_LT(std::abs(curve_exp_sum(c, one, ell, f) - std::conj(curve_exp_sum(c, one, ell, neg))), 1e-9);
    EXPECT_THROW(bombieri_bound_check(c, one, ell, zero1), std::invalid_argument);
    EXPECT_THROW(curve_exp_sum(c, one, ell, zero0), std::invalid_argument);
    EXPECT_THROW(curve_exp_sum(c, one, ell, FrequencyVector{{16, 0, 0}, {0}}), std::invalid_argument);
}

// r = 0 with a frequency on x only is a Legendre-weighted sum.
TEST(ExpSumProperty, CurveSumMatchesLegendreWeightedSum) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 60; ++k) {
        const PrimeModulus m = PrimeModulus::next_at_least(5 + rng() % 300);
        const u64 p = m.value();
        auto c = random_curve(m, 3 + k % 3, rng);
        const auto half = static_cast<i64>(m.half());
        const i64 t = static_cast<i64>(rng() % (2 * half + 1)) - half;
        Complex want = 0.0;
        for (u64 x = 0; x < p; ++x)
            want += static_cast<double>(1 + m.legendre(c.f()(x))) *
                    e_p(-static_cast<double>((t * static_cast<i64>(x)) % static_cast<i64>(p)), static_cast<double>(p));
        auto got = curve_exp_sum(c, ShiftSet(m), RationalMapExpr::builtin("xcoord"), FrequencyVector{{t, 0}, {}});
        ASSERT_LT(std::abs(got - want), 1e-6 * static_cast<double>(p));
    }
}

TEST(ExpSumProperty, BombieriRandomTrials) {
    std::mt19937_64 rng(77);
    for (int k = 0; k < 150; ++k) {
        const std::size_t r = k % 2;
        const PrimeModulus m = PrimeModulus::next_at_least(11 + rng() % (r == 0 ? 480 : 180));
        auto c = random_curve(m, 3, rng);
        std::vector<i64> hs;
        if (r) hs.push_back(1 + static_cast<i64>(rng() % (m.value() - 1)));
        const ShiftSet H(hs, m);
        const auto half = static_cast<i64>(m.half());
        FrequencyVector f{std::vector<i64>(r + 2), std::vector<i64>(r)};
        do {
            for (auto& v : f.t) v = static_cast<i64>(rng() % (2 * half + 1)) - half;
            for (auto& v : f.u) v = static_cast<i64>(rng() % (2 * half + 1)) - half;
        } while (f.is_zero());
        auto chk = bombieri_bound_check(c, H, RationalMapExpr::builtin("ell_diff"), f);
        const double D = std::ldexp(3.0, static_cast<int>(r));
        ASSERT_NEAR(chk.rhs, D * (D - 1) * std::sqrt(static_cast<double>(m.value())) + D * D / 2, 1e-9);
        ASSERT_TRUE(chk.ok) << chk.lhs << " > " << chk.rhs;
    }
}

TEST(ExpSum, DftReconstructionExamples) {
    const PrimeModulus m(13);
    HyperellipticCurve c(Polynomial::parse("1,0,0,1", m));
    const auto xc = RationalMapExpr::builtin("xcoord");
    const ShiftSet one(std::vector<i64>{1}, m);
    EXPECT_NEAR(reconstruct_N_via_dft(c, one, {0, 6}, {0, 13}, xc),
                static_cast<double>(count_N_H(c, one, {0, 6}, {0, 13}, xc)), 1e-6);
    EXPECT_NEAR(reconstruct_N_via_dft(c, one, {0, 6}, {4, 4}, xc), 0.0, 1e-6);
    // H empty and I covering every root: each x with a point counted once
    u64 xs = 0;
    for (u64 x = 0; x < 13; ++x) xs += m.legendre(c.f()(x)) >= 0;
    EXPECT_NEAR(reconstruct_N_via_dft(c, ShiftSet(m), {0, 7}, {0, 13}, xc), static_cast<double>(xs), 1e-6);
    // I = [0, p) lets both roots through, so every affine point counts
    EXPECT_NEAR(reconstruct_N_via_dft(c, ShiftSet(m), {0, 13}, {0, 13}, xc),
                static_cast<double>(affine_point_count(c)), 1e-6);
    EXPECT_THROW(reconstruct_N_via_dft(HyperellipticCurve(Polynomial::parse("1,0,0,1", PrimeModulus(37))),
                                       ShiftSet(PrimeModulus(37)), {0, 5}, {0, 5}, xc),
                 std::invalid_argument);
}

TEST(ExpSumProperty, DftReconstructionRandom) {
    std::mt19937_64 rng(31);
    const RationalMapExpr maps[] = {RationalMapExpr::builtin("xcoord"), RationalMapExpr::builtin("ell_diff")};
    for (int k = 0; k < 12; ++k) {
        const PrimeModulus m = PrimeModulus::next_at_least(5 + rng() % 20);
        const u64 p = m.value();
        auto c = random_curve(m, 3, rng);
        std::vector<i64> hs;
        if (k % 2) hs.push_back(1 + static_cast<i64>(rng() % (p - 1)));
        const ShiftSet H(hs, m);
        const u64 ilo = rng() % (m.half() + 1);
        const Interval I{ilo, ilo + rng() % (m.half() + 2 - ilo)};
        const u64 jlo = rng() % (p + 1);
        const Interval J{jlo, jlo + rng() % (p + 1 - jlo)};
        const auto& g = maps[k % 2];
        ASSERT_NEAR(reconstruct_N_via_dft(c, H, I, J, g), static_cast<double>(count_N_H(c, H, I, J, g)), 1e-6);
    }
}
