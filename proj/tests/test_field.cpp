#include <gtest/gtest.h>

#include <set>

#include "hh/eisenstein.hpp"
#include "hh/field.hpp"
#include "oracle.hpp"

using namespace hh;

TEST(Numeric, PrimesAndPowers)
{
    EXPECT_TRUE(is_prime(2));
    EXPECT_TRUE(is_prime(97));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
    for (std::int64_t n = 0; n < 500; ++n)
        EXPECT_EQ(is_prime(n), oracle::prime(n)) << n;
    EXPECT_EQ(pow_mod(3, 6, 7), 1U);
    EXPECT_EQ(inv_mod(3, 7), 5);
    EXPECT_EQ(mod(-1, 7), 6);
    EXPECT_EQ(isqrt(48), 6);
    EXPECT_EQ(isqrt(49), 7);
    EXPECT_TRUE(is_square(49));
    EXPECT_FALSE(is_square(-4));
    EXPECT_EQ(int_pow(-7, 3), Int(-343));
}

TEST(Numeric, DivisorsAndSymbols)
{
    EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(prime_divisors(360), (std::vector<std::int64_t>{2, 3, 5}));
    EXPECT_EQ(valuation(72, 3), 2);
    EXPECT_EQ(kronecker(-3, 3), 0);
    EXPECT_EQ(kronecker(-4, 3), -1);
    EXPECT_EQ(kronecker(-23, 2), 1);
    EXPECT_EQ(kronecker(-5, 2), -1);
    EXPECT_EQ(kronecker(-7, 2), 1);
    EXPECT_EQ(kronecker(-4, 2), 0);
}

TEST(Numeric, ExactStrings)
{
    EXPECT_EQ(to_exact_string(Rational(129, 2197)), "129/2197");
    EXPECT_EQ(to_exact_string(Rational(-6)), "-6");
    EXPECT_THROW(to_int(Rational(1, 3)), Error);
}

TEST(Field, PrimeFieldGeneratorIsSmallestPrimitiveRoot)
{
    const FieldPtr f = build_field(7, 1);
    EXPECT_EQ(f->q(), 7U);
    EXPECT_EQ(f->generator(), 3U);
    for (std::int64_t p : {5, 7, 11, 13, 31, 61, 97})
        EXPECT_EQ(static_cast<std::int64_t>(build_field(p, 1)->generator()), oracle::primitive_root(p)) << p;
}

TEST(Field, CubeClassesWhenCubingIsBijective)
{
    const FieldPtr f = build_field(5, 1);
    EXPECT_FALSE(f->q_is_1_mod_3());
    for (Elem x = 1; x < 5; ++x)
        EXPECT_EQ(f->cube_class(x), 0);
    EXPECT_EQ(f->cube_class(0), kNoCubeClass);
}

TEST(Field, QuadraticExtensionHasSixteenCubes)
{
    const FieldPtr f = build_field(7, 2);
    EXPECT_EQ(f->q(), 49U);
    std::set<Elem> image;
    for (Elem x = 1; x < 49; ++x)
        image.insert(f->pow(x, 3));
    int zero_class = 0;
    for (Elem x = 1; x < 49; ++x) {
        const bool cube = f->cube_class(x) == 0;
        zero_class += cube ? 1 : 0;
        EXPECT_EQ(cube, image.count(x) == 1) << x;
    }
    EXPECT_EQ(zero_class, 16);
}

TEST(Field, CubeClassesMatchEnumerationOverPrimeFields)
{
    for (std::int64_t p : {7, 13, 19, 37, 61}) {
        const FieldPtr f = build_field(p, 1);
        const auto cubes = oracle::cubes(p);
        for (std::int64_t x = 1; x < p; ++x)
            EXPECT_EQ(f->is_cube(f->from_int(x)), cubes.count(x) == 1) << p << " " << x;
    }
}

TEST(Field, ExtensionArithmeticAxioms)
{
    for (auto [p, e] : {std::pair{5, 2}, std::pair{7, 2}, std::pair{5, 3}, std::pair{11, 2}}) {
        const FieldPtr f = build_field(p, e);
        const std::uint64_t q = f->q();
        EXPECT_EQ(f->order(), q - 1);
        for (Elem x = 1; x < q; ++x) {
            EXPECT_EQ(f->mul(x, f->inv(x)), 1U);
            EXPECT_EQ(f->exp(f->log(x)), x);
            EXPECT_EQ(f->add(x, f->neg(x)), 0U);
            EXPECT_EQ(f->one_minus(x), f->sub(1, x));
        }
        // Frobenius fixes exactly F_p, and the absolute trace is additive.
        std::uint64_t fixed = 0;
        for (Elem x = 0; x < q; ++x) {
            fixed += f->frobenius(x) == x ? 1 : 0;
            EXPECT_EQ(f->frobenius(x) == x, f->in_prime_field(x));
        }
        EXPECT_EQ(fixed, static_cast<std::uint64_t>(p));
        for (Elem x = 0; x < q; x += 3)
            for (Elem y = 0; y < q; y += 7)
                EXPECT_EQ(f->trace_to_prime(f->add(x, y)),
                          (f->trace_to_prime(x) + f->trace_to_prime(y)) % static_cast<Elem>(p));
    }
}

TEST(Field, NoncubeSearch)
{
    EXPECT_EQ(find_noncube(*build_field(7, 1)), 2U);
    EXPECT_EQ(find_noncube(*build_field(13, 1)), 2U);
    try {
        find_noncube(*build_field(5, 1));
        FAIL() << "expected AllCubes";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AllCubes);
    }
}

TEST(Field, RejectsBadInput)
{
    try {
        build_field(9, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
    try {
        build_field(7, 9, 1000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FieldTooLarge);
        EXPECT_TRUE(e.is_resource_bound());
    }
    EXPECT_THROW(build_field(3, 1), Error);
}

TEST(Field, CacheReturnsSameInstance)
{
    EXPECT_EQ(cached_field(13, 1).get(), cached_field(13, 1).get());
}

TEST(Eisenstein, RingOperations)
{
    const EisInt w = EisInt::omega();
    EXPECT_EQ(w * w * w, EisInt(1));
    EXPECT_EQ(w * w + w + EisInt(1), EisInt(0));
    EXPECT_EQ(EisInt::zeta6_pow(3), EisInt(-1));
    EXPECT_EQ(EisInt::zeta6_pow(2), w);
    for (int k = 0; k < 12; ++k)
        EXPECT_EQ(EisInt::zeta6_pow(k) * EisInt::zeta6_pow(6 - k % 6), EisInt(1)) << k;
    const EisInt z(Int(3), Int(-2));
    EXPECT_EQ(z * z.conj(), EisInt(z.norm()));
    EXPECT_EQ(z.norm(), Int(9 + 6 + 4));
    EXPECT_NEAR(std::abs(z.to_complex()) * std::abs(z.to_complex()), 19.0, 1e-12);
}
