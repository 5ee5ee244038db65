#include <gtest/gtest.h>

#include <set>

#include "hh/class_number.hpp"
#include "hh/hecke.hpp"
#include "oracle.hpp"

using namespace hh;

TEST(ClassNumber, SmallDiscriminants)
{
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-4), 1);
    EXPECT_EQ(class_number(-23), 3);
    EXPECT_EQ(h_star(-3), Rational(1, 3));
    EXPECT_EQ(h_star(-4), Rational(1, 2));
    EXPECT_EQ(h_star(-23), Rational(3));
}

TEST(ClassNumber, MatchesReducedFormEnumeration)
{
    for (std::int64_t d = -3; d >= -2000; --d) {
        if (mod(d, 4) != 0 && mod(d, 4) != 1)
            continue;
        EXPECT_EQ(class_number(d), oracle::reduced_forms(d, true)) << d;
    }
}

TEST(ClassNumber, RejectsNonDiscriminants)
{
    for (std::int64_t d : {-1, -2, -5, 0, 4}) {
        try {
            class_number(d);
            FAIL() << d;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::BadDiscriminant);
        }
    }
}

TEST(Hurwitz, Examples)
{
    EXPECT_EQ(hurwitz(-12).Hstar, Rational(4, 3));
    EXPECT_EQ(hurwitz(-19).H, Rational(1));
    EXPECT_EQ(hurwitz(-27).H, Rational(2));
    EXPECT_EQ(hurwitz_H(-5), Rational(0));
}

TEST(Hurwitz, CountsAllReducedForms)
{
    for (std::int64_t n = -3; n >= -1500; --n) {
        if (mod(n, 4) != 0 && mod(n, 4) != 1)
            continue;
        EXPECT_EQ(hurwitz(n).H, Rational(oracle::reduced_forms(n, false))) << n;
    }
}

TEST(Hurwitz, StarDifferenceIsUnitCorrection)
{
    const std::set<Rational> allowed{Rational(0), Rational(1, 2), Rational(2, 3), Rational(7, 6)};
    for (std::int64_t n = -3; n >= -3000; --n) {
        if (mod(n, 4) != 0 && mod(n, 4) != 1)
            continue;
        const HurwitzSums h = hurwitz(n);
        EXPECT_EQ(allowed.count(h.H - h.Hstar), 1U) << n;
    }
}

TEST(Hurwitz, FundamentalFactorization)
{
    for (std::int64_t n = -3; n >= -1000; --n) {
        if (mod(n, 4) != 0 && mod(n, 4) != 1)
            continue;
        const auto fd = fundamental_factorization(n);
        EXPECT_EQ(fd.t * fd.t * fd.D, n);
        EXPECT_TRUE(mod(fd.D, 4) == 0 || mod(fd.D, 4) == 1);
        // no further square can be pulled out
        for (std::int64_t f = 2; f * f <= -fd.D; ++f) {
            const std::int64_t d2 = fd.D / (f * f);
            if (fd.D % (f * f) == 0)
                EXPECT_FALSE(mod(d2, 4) == 0 || mod(d2, 4) == 1) << n;
        }
    }
}

TEST(Cox, IndexFormula)
{
    EXPECT_TRUE(cox_index_check(-3, 3));
    EXPECT_TRUE(cox_index_check(-4, 2));
    EXPECT_TRUE(cox_index_check(-23, 2));
    for (std::int64_t d : {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -31, -40, -43, -51})
        for (std::int64_t iota = 1; iota <= 12; ++iota)
            EXPECT_TRUE(cox_index_check(d, iota)) << d << " " << iota;
}

TEST(Decompose, Examples)
{
    const Decomposition d13 = decompose(13);
    ASSERT_TRUE(d13.ab && d13.cd);
    EXPECT_EQ(*d13.ab, (std::pair<std::int64_t, std::int64_t>{2, 3}));
    EXPECT_EQ(*d13.cd, (std::pair<std::int64_t, std::int64_t>{5, 3}));
    const Decomposition d7 = decompose(7);
    EXPECT_FALSE(d7.ab);
    ASSERT_TRUE(d7.cd);
    EXPECT_EQ(*d7.cd, (std::pair<std::int64_t, std::int64_t>{1, 3}));
    const Decomposition d5 = decompose(5);
    ASSERT_TRUE(d5.ab);
    EXPECT_EQ(*d5.ab, (std::pair<std::int64_t, std::int64_t>{2, 1}));
    EXPECT_FALSE(d5.cd);
}

TEST(Decompose, LabelingConventions)
{
    for (std::int64_t p = 5; p < 1000; ++p) {
        if (!is_prime(p))
            continue;
        const Decomposition d = decompose(p);
        EXPECT_EQ(d.ab.has_value(), p % 4 == 1);
        EXPECT_EQ(d.cd.has_value(), p % 3 == 1);
        if (d.ab) {
            const auto [a, b] = *d.ab;
            EXPECT_EQ(a * a + b * b, p);
            if (a % 3 == 0 || b % 3 == 0)
                EXPECT_EQ(b % 3, 0) << p;
        }
        if (d.cd) {
            const auto [c, dd] = *d.cd;
            EXPECT_EQ(c * c + 3 * dd * dd, 4 * p);
            EXPECT_EQ(dd % 3, 0) << p;
            EXPECT_GT(c, 0);
        }
    }
}

TEST(Decompose, ThreePairsAreAllSolutions)
{
    // s^2 + 3 t^2 = 4p has exactly the solutions (c, d), ((c+3d)/2, |c-d|/2), (|c-3d|/2, (c+d)/2).
    for (std::int64_t p = 7; p < 1000; ++p) {
        if (!is_prime(p) || p % 3 != 1)
            continue;
        const auto [c, d] = *decompose(p).cd;
        const std::set<std::pair<std::int64_t, std::int64_t>> pairs{
            {c, d}, {(c + 3 * d) / 2, std::abs(c - d) / 2}, {std::abs(c - 3 * d) / 2, (c + d) / 2}};
        std::set<std::pair<std::int64_t, std::int64_t>> all;
        for (std::int64_t s = 1; s * s < 4 * p; ++s) {
            const std::int64_t r = 4 * p - s * s;
            if (r % 3 == 0 && is_square(r / 3))
                all.insert({s, isqrt(r / 3)});
        }
        EXPECT_EQ(pairs, all) << p;
        EXPECT_EQ(pairs.size(), 3U);
    }
}

TEST(WeightedSums, ThreeFactorEliminationBothBranches)
{
    // sum_f h*(n/f^2) c(s,f,3) = (1 + (D|3)) H*(n) when 3 does not divide t,
    // and H*(n) + 3 H*(n/9) when it does.
    for (std::int64_t p = 2; p <= 200; ++p) {
        if (!is_prime(p) || p == 3)
            continue;
        for (std::int64_t s = 0; s * s < 4 * p; ++s) {
            const std::int64_t n = s * s - 4 * p;
            const auto fd = fundamental_factorization(n);
            Rational direct = 0;
            for (std::int64_t f : divisors(fd.t))
                direct += h_star(n / (f * f)) * c_weight(s, f, 3, p);
            const Rational expect = fd.t % 3 != 0 ? Rational(1 + kronecker(fd.D, 3)) * hurwitz(n).Hstar
                                                  : hurwitz(n).Hstar + 3 * hurwitz(n / 9).Hstar;
            EXPECT_EQ(direct, expect) << "p=" << p << " s=" << s;
        }
    }
}
