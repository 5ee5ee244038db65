#include <gtest/gtest.h>

#include "hh/elliptic.hpp"
#include "hh/hecke.hpp"
#include "hh/hypergeometric.hpp"
#include "oracle.hpp"

using namespace hh;

namespace {

/// G_k at a rational argument: G_2 = 1, G_3 = s, G_{j+1} = s G_j - p G_{j-1}.
Rational G_rational(unsigned k, const Rational& s, std::int64_t p)
{
    Rational prev = 0, cur = 1;
    for (unsigned j = 2; j < k; ++j) {
        const Rational next = s * cur - Rational(p) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// eps(x) (1/p) sum_y rho(y) rho^2(1-y) rho(1-xy) over F_p, with complex characters.
oracle::cplx single_sum_2f1(const oracle::PrimeChars& o, std::int64_t x)
{
    const std::int64_t p = o.p, third = (p - 1) / 3;
    if (x % p == 0)
        return 0.0;
    oracle::cplx s = 0.0;
    for (std::int64_t y = 0; y < p; ++y)
        s += o.chi(third, y) * o.chi(2 * third, 1 - y) * o.chi(third, 1 - x * y);
    return s / static_cast<double>(p);
}

} // namespace

TEST(Hypergeometric, SmallExamples)
{
    const FieldPtr f = cached_field(7, 1);
    // 27 / 1 = 6 in F_7
    EXPECT_EQ(fast_2f1_rho(*f, 6), Rational(1, 7));
    EXPECT_EQ(7 + 1 - oracle::count_points(1, 1, 7), -1);
    EXPECT_EQ(fast_2f1_rho(*f, 0), Rational(0));

    const auto c = make_char_context(f);
    const BinomialTable table(c);
    const HypergeomValue v = evaluate_general(table, HypergeomSpec::rho_2f1(*c), 6);
    ASSERT_TRUE(v.rational);
    EXPECT_EQ(*v.rational, Rational(1, 7));
    EXPECT_EQ(*evaluate_general(table, HypergeomSpec::rho_2f1(*c), 0).rational, Rational(0));
}

TEST(Hypergeometric, ValueAtNineEighthsMatchesCurveCount)
{
    const FieldPtr f = cached_field(7, 1);
    const std::int64_t x = 9 * inv_mod(8, 7) % 7;
    const std::int64_t t = 7 + 1 - oracle::count_points(24 % 7, 576 % 7, 7);
    EXPECT_EQ(fast_2f1_rho(*f, f->from_int(x)), Rational(-t, 7));
}

TEST(Hypergeometric, FourFThreeAtOne)
{
    const auto c = make_char_context(cached_field(13, 1));
    const BinomialTable table(c);
    const Character r = Character::rho(*c), e = Character::trivial();
    const HypergeomSpec spec{{r, r * r, e, e}, {e, r * r, r}};
    const HypergeomValue v = evaluate_general(table, spec, 1);
    ASSERT_TRUE(v.rational);
    EXPECT_EQ(*v.rational, Rational(129, 2197));
    EXPECT_EQ(*v.rational, Rational(13 * 13 - 3 * 13 - 1, 13 * 13 * 13));
}

TEST(Hypergeometric, SingleSumMatchesDirectCharacterSum)
{
    for (std::int64_t p : {7, 13, 19, 31}) {
        const FieldPtr f = cached_field(p, 1);
        const oracle::PrimeChars o(p);
        for (std::int64_t x = 0; x < p; ++x) {
            const oracle::cplx direct = single_sum_2f1(o, x);
            EXPECT_NEAR(direct.imag(), 0.0, 1e-9);
            EXPECT_NEAR(direct.real(), static_cast<double>(fast_2f1_rho(*f, f->from_int(x))), 1e-9) << p << " " << x;
        }
    }
}

TEST(Hypergeometric, FastFormEqualsGeneralSeries)
{
    for (std::int64_t p = 5; p <= 61; ++p) {
        if (!is_prime(p))
            continue;
        for (unsigned e = 1; e <= 2; ++e) {
            if (int_pow(p, e) % 3 != 1)
                continue;
            const FieldPtr f = cached_field(p, e);
            const auto c = make_char_context(f);
            const BinomialTable table(c);
            const HypergeomSeries series(table, HypergeomSpec::rho_2f1(*c), 4000);
            const auto fast = fast_2f1_rho_table(*f);
            for (Elem x = 0; x < f->q(); ++x) {
                const HypergeomValue v = series(x);
                ASSERT_TRUE(v.rational) << p << "^" << e << " x=" << x;
                EXPECT_EQ(*v.rational, fast[x]) << p << "^" << e << " x=" << x;
            }
        }
    }
}

TEST(Hypergeometric, GeneralSeriesRespectsBound)
{
    const auto c = make_char_context(cached_field(61, 2));
    const BinomialTable table(c);
    try {
        evaluate_general(table, HypergeomSpec::rho_2f1(*c), 1);
        FAIL() << "expected FieldTooLarge";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FieldTooLarge);
    }
}

TEST(Hypergeometric, Denominators)
{
    for (std::int64_t p : {7, 13, 19}) {
        const FieldPtr f = cached_field(p, 1);
        for (std::int64_t a1 = 1; a1 < p; ++a1)
            for (std::int64_t a3 = 0; a3 < p; ++a3) {
                if (!Curve{a1, a3}.good_at(p))
                    continue;
                const std::int64_t x = 27 * a3 % p * inv_mod(a1 * a1 % p * a1 % p, p) % p;
                const Rational v = fast_2f1_rho(*f, f->from_int(x)) * p;
                EXPECT_TRUE(is_integer(v));
            }
        for (std::int64_t x = 0; x < p; ++x)
            EXPECT_TRUE(is_integer(fast_2f1_rho(*f, f->from_int(x)) * p * p));
    }
}

TEST(Hypergeometric, CubeFilteredReflectionAggregate)
{
    // Sum of G_k(p F(t), p) over t != 0, 1 with 1 - t a cube equals the sum over t != 0, 1 with t a cube.
    for (std::int64_t p : {7, 13, 19, 31, 37}) {
        const FieldPtr f = cached_field(p, 1);
        const auto table = fast_2f1_rho_table(*f);
        for (unsigned k : {4U, 6U}) {
            Rational one_minus_cube = 0, cube = 0;
            for (std::int64_t t = 2; t < p; ++t) {
                const Rational g = G_rational(k, table[static_cast<std::size_t>(t)] * p, p);
                if (f->is_cube(f->from_int(1 - t)))
                    one_minus_cube += g;
                if (f->is_cube(f->from_int(t)))
                    cube += g;
            }
            EXPECT_EQ(one_minus_cube, cube) << "p=" << p << " k=" << k;
        }
    }
}
