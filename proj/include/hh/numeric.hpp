#pragma once

// Big integers, exact rationals and small-integer number theory helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hh/error.hpp"

namespace hh {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const Int& num, const Int& den) { return Rational(num, den); }

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline Int to_int(const Rational& r, ErrorCode on_fraction = ErrorCode::NonIntegralResult)
{
    if (!is_integer(r))
        fail(on_fraction, "value " + r.str() + " is not an integer");
    return boost::multiprecision::numerator(r);
}

/// "num/den" for fractions, plain digits for integers.
inline std::string to_exact_string(const Rational& r)
{
    const Int& num = boost::multiprecision::numerator(r);
    const Int& den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline Int int_pow(const Int& base, unsigned exp)
{
    Int result = 1;
    for (unsigned i = 0; i < exp; ++i)
        result *= base;
    return result;
}

inline Int int_pow(std::int64_t base, unsigned exp) { return int_pow(Int(base), exp); }

// ---------------------------------------------------------------------------
// Machine-integer helpers.

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo prime p (a != 0 mod p).
inline std::int64_t inv_mod(std::int64_t a, std::int64_t p)
{
    return static_cast<std::int64_t>(pow_mod(static_cast<std::uint64_t>(mod(a, p)), p - 2, p));
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        fail(ErrorCode::InvalidArgument, "isqrt of negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_square(std::int64_t n)
{
    if (n < 0)
        return false;
    std::int64_t r = isqrt(n);
    return r * r == n;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    if (n < 0)
        n = -n;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n)
                large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Exponent of the prime l in n (n != 0).
inline int valuation(std::int64_t n, std::int64_t l)
{
    if (n < 0)
        n = -n;
    int v = 0;
    while (n != 0 && n % l == 0) {
        n /= l;
        ++v;
    }
    return v;
}

/// Kronecker symbol (d | l) for a prime l.
inline int kronecker(std::int64_t d, std::int64_t l)
{
    if (l == 2) {
        if (d % 2 == 0)
            return 0;
        std::int64_t r = mod(d, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    std::int64_t r = mod(d, l);
    if (r == 0)
        return 0;
    return pow_mod(static_cast<std::uint64_t>(r), (l - 1) / 2, l) == 1 ? 1 : -1;
}

} // namespace hh
