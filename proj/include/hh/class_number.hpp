#pragma once

// Class numbers of imaginary quadratic orders by reduced forms, and the
// Hurwitz-type sums built from them.

#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

#include "hh/numeric.hpp"

namespace hh {

inline void check_discriminant(std::int64_t d)
{
    if (d >= 0 || (mod(d, 4) != 0 && mod(d, 4) != 1))
        fail(ErrorCode::BadDiscriminant, std::to_string(d) + " is not a negative discriminant");
}

namespace detail {

inline std::int64_t count_reduced_forms(std::int64_t d)
{
    std::int64_t n = 0;
    for (std::int64_t a = 1; 3 * a * a <= -d; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0)
                continue;
            const std::int64_t c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1)
                continue;
            ++n;
        }
    }
    return n;
}

} // namespace detail

/// Number of primitive reduced forms of discriminant d (memoized).
inline std::int64_t class_number(std::int64_t d)
{
    check_discriminant(d);
    static std::shared_mutex mutex;
    static std::unordered_map<std::int64_t, std::int64_t> cache;
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(d);
        if (it != cache.end())
            return it->second;
    }
    const std::int64_t h = detail::count_reduced_forms(d);
    std::unique_lock lock(mutex);
    cache.emplace(d, h);
    return h;
}

/// Half the number of units: 3 for -3, 2 for -4, 1 otherwise.
inline std::int64_t unit_weight(std::int64_t d) { return d == -3 ? 3 : d == -4 ? 2 : 1; }

inline Rational h_star(std::int64_t d) { return Rational(class_number(d), unit_weight(d)); }

struct DiscriminantData {
    std::int64_t n = 0;
    std::int64_t t = 1; // n = t^2 D
    std::int64_t D = 0; // fundamental
};

/// n = t^2 D with D fundamental.
inline DiscriminantData fundamental_factorization(std::int64_t n)
{
    check_discriminant(n);
    std::int64_t m = n, f = 1;
    for (std::int64_t d = 2; d * d <= -m; ++d)
        while (m % (d * d) == 0) {
            m /= d * d;
            f *= d;
        }
    if (mod(m, 4) == 1)
        return {n, f, m};
    return {n, f / 2, 4 * m};
}

struct HurwitzSums {
    Rational H;
    Rational Hstar;
};

/// H(n) = sum_{f | t} h(n/f^2) and H*(n) = sum_{f | t} h*(n/f^2).
inline HurwitzSums hurwitz(std::int64_t n)
{
    const auto fd = fundamental_factorization(n);
    HurwitzSums out{0, 0};
    for (std::int64_t f : divisors(fd.t)) {
        const std::int64_t d = n / (f * f);
        out.H += class_number(d);
        out.Hstar += h_star(d);
    }
    return out;
}

/// H(n) with the convention H(n) = 0 when n is not a negative discriminant.
inline Rational hurwitz_H(std::int64_t n)
{
    if (n >= 0 || (mod(n, 4) != 0 && mod(n, 4) != 1))
        return 0;
    return hurwitz(n).H;
}

inline Rational hurwitz_Hstar(std::int64_t n)
{
    if (n >= 0 || (mod(n, 4) != 0 && mod(n, 4) != 1))
        return 0;
    return hurwitz(n).Hstar;
}

/// h*(iota^2 d) = h*(d) iota prod_{l | iota} (1 - (d|l)/l).
inline bool cox_index_check(std::int64_t d, std::int64_t iota)
{
    if (iota < 1)
        fail(ErrorCode::InvalidArgument, "index must be positive");
    Rational rhs = h_star(d) * iota;
    for (std::int64_t l : prime_divisors(iota))
        rhs *= Rational(l - kronecker(d, l), l);
    return h_star(iota * iota * d) == rhs;
}

struct Decomposition {
    std::optional<std::pair<std::int64_t, std::int64_t>> ab; // p = a^2 + b^2
    std::optional<std::pair<std::int64_t, std::int64_t>> cd; // 4p = c^2 + 3d^2, 3 | d
};

/// (a, b) with 3 | b when 3 divides either, else a > b; (c, d) with 3 | d.
inline Decomposition decompose(std::int64_t p)
{
    if (!is_prime(p) || p <= 3)
        fail(ErrorCode::InvalidArgument, "decompose needs a prime p > 3");
    Decomposition out;
    if (p % 4 == 1) {
        for (std::int64_t a = 1; 2 * a * a <= p; ++a) {
            const std::int64_t b2 = p - a * a;
            if (!is_square(b2))
                continue;
            std::int64_t x = a, y = isqrt(b2); // x < y
            if (x % 3 == 0)
                out.ab = {{y, x}};
            else if (y % 3 == 0)
                out.ab = {{x, y}};
            else
                out.ab = {{y, x}};
            break;
        }
    }
    if (p % 3 == 1) {
        for (std::int64_t d = 3; 3 * d * d < 4 * p; d += 3) {
            const std::int64_t c2 = 4 * p - 3 * d * d;
            if (is_square(c2)) {
                out.cd = {{isqrt(c2), d}};
                break;
            }
        }
    }
    return out;
}

} // namespace hh
