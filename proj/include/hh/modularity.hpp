#pragma once

// Eta-product q-expansions, the coefficients b(p) of eta(3z)^8 by several
// formulas, and the point count of x^3 = y1 y2 y3 (y1+1)(y2+1)(y3+1).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hh/charsum.hpp"
#include "hh/elliptic.hpp"
#include "hh/hecke.hpp"

namespace hh {

inline constexpr std::int64_t kMaxEtaPrecision = 100000;

struct EtaFactor {
    int scale = 1;    // eta(scale * z)
    int exponent = 1; // may be negative
};

struct EtaProduct {
    std::vector<EtaFactor> factors;
    std::int64_t leading_power = 0;
    std::vector<std::int64_t> coeffs; // coeffs[n] is the coefficient of q^n, 0 <= n <= N

    std::int64_t operator[](std::int64_t n) const
    {
        if (n < 0 || n >= static_cast<std::int64_t>(coeffs.size()))
            fail(ErrorCode::InvalidArgument, "coefficient index " + std::to_string(n) + " outside the expansion");
        return coeffs[static_cast<std::size_t>(n)];
    }
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        fail(ErrorCode::TooLargeForMethod, "eta coefficient overflows 64 bits");
    return r;
}

/// Exponents and signs of prod_n (1 - x^n) = sum_k (-1)^k x^{k(3k-1)/2}, up to limit.
inline std::vector<std::pair<std::int64_t, int>> pentagonal_terms(std::int64_t limit)
{
    std::vector<std::pair<std::int64_t, int>> out{{0, 1}};
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > limit)
            break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        out.emplace_back(e1, sign);
        if (e2 <= limit)
            out.emplace_back(e2, sign);
    }
    return out;
}

} // namespace detail

/// prod_i eta(m_i z)^{r_i} as a q-series up to q^N.
inline EtaProduct eta_expand(const std::vector<EtaFactor>& factors, std::int64_t N)
{
    if (N < 0 || N > kMaxEtaPrecision)
        fail(ErrorCode::TooLargeForMethod, "precision must lie in [0, " + std::to_string(kMaxEtaPrecision) + "]");
    std::int64_t weight24 = 0;
    for (const auto& f : factors) {
        if (f.scale < 1)
            fail(ErrorCode::InvalidArgument, "eta scale must be positive");
        weight24 += static_cast<std::int64_t>(f.scale) * f.exponent;
    }
    if (weight24 % 24 != 0 || weight24 < 0)
        fail(ErrorCode::NonIntegralWeight, "leading power " + std::to_string(weight24) + "/24 is not a nonnegative integer");
    EtaProduct out;
    out.factors = factors;
    out.leading_power = weight24 / 24;
    const std::int64_t L = out.leading_power;
    out.coeffs.assign(static_cast<std::size_t>(N + 1), 0);
    if (L > N)
        return out;
    const std::int64_t M = N - L; // precision of the product part
    std::vector<std::int64_t> c(static_cast<std::size_t>(M + 1), 0);
    c[0] = 1;
    for (const auto& f : factors) {
        const auto terms = detail::pentagonal_terms(M / f.scale);
        for (int rep = 0; rep < (f.exponent < 0 ? -f.exponent : f.exponent); ++rep) {
            if (f.exponent > 0) {
                // multiply by sum_k sign_k q^{m e_k}, descending so terms read old values
                for (std::int64_t n = M; n >= 0; --n) {
                    std::int64_t acc = 0;
                    for (const auto& [e, sign] : terms) {
                        const std::int64_t shift = e * f.scale;
                        if (shift > n)
                            break;
                        acc = detail::checked_add(acc, sign * c[static_cast<std::size_t>(n - shift)]);
                    }
                    c[static_cast<std::size_t>(n)] = acc;
                }
            } else {
                // divide by the same series: c_n = sum_{k>=1} -sign_k c_{n - m e_k}
                for (std::int64_t n = 0; n <= M; ++n) {
                    std::int64_t acc = c[static_cast<std::size_t>(n)];
                    for (std::size_t i = 1; i < terms.size(); ++i) {
                        const std::int64_t shift = terms[i].first * f.scale;
                        if (shift > n)
                            break;
                        acc = detail::checked_add(acc, -terms[i].second * c[static_cast<std::size_t>(n - shift)]);
                    }
                    c[static_cast<std::size_t>(n)] = acc;
                }
            }
        }
    }
    for (std::int64_t n = 0; n <= M; ++n)
        out.coeffs[static_cast<std::size_t>(n + L)] = c[static_cast<std::size_t>(n)];
    return out;
}

/// eta(3z)^8, the weight-4 level-9 newform.
inline EtaProduct eta3z8(std::int64_t N) { return eta_expand({{3, 8}}, N); }

/// eta(z)^6 eta(3z)^6, a weight-6 level-3 newform used as a trace oracle.
inline EtaProduct eta_z6_3z6(std::int64_t N) { return eta_expand({{1, 6}, {3, 6}}, N); }

/// -p^3 (bin(rho^2, rho)^3 + bin(rho, rho^2)^3) for p = 1 mod 3, 0 for p = 2 mod 3.
inline Int b_jacobi(std::int64_t p)
{
    if (!is_prime(p) || p == 3)
        fail(ErrorCode::InvalidArgument, "b(p) formula needs a prime p != 3");
    if (p % 3 != 1)
        return 0;
    const CharacterContext c(cached_field(p, 1));
    const Character r = Character::rho(c);
    const CharValue x = normalized_binomial(c, r * r, r);
    const CharValue y = normalized_binomial(c, r, r * r);
    EisRat v = x.exact().pow(3) + y.exact().pow(3);
    v *= Rational(-int_pow(p, 3));
    if (!v.is_rational() || !is_integer(v.a))
        fail(ErrorCode::NonIntegralResult, "Jacobi-sum expression " + v.str() + " is not an integer");
    return boost::multiprecision::numerator(v.a);
}

/// t^3 - 3pt with t the trace of y^2 + y = x^3.
inline Int b_trace_cube(std::int64_t p)
{
    if (p % 3 != 1)
        fail(ErrorCode::WrongResidue, "t^3 - 3pt form needs p = 1 mod 3");
    const Int t = trace_j0(p);
    return t * t * t - Int(3) * p * t;
}

/// Product of the three cubic-twist traces.
inline Int b_twist_product(std::int64_t p)
{
    const auto [t1, t2, t3] = cubic_twist_traces(p);
    return Int(t1) * t2 * t3;
}

/// -p^3 2F1(rho, rho^2; eps | 9/8)_{p^3}, through the trace of E_{1, 1/24}.
inline Int b_hypergeom(std::int64_t p)
{
    if (p % 3 != 1)
        return 0;
    const Rational v = hypergeom_via_trace(p, 9 * inv_mod(8, p) % p, 3);
    return require_integer(-Rational(int_pow(p, 3)) * v, "-p^3 2F1(9/8)");
}

enum class ThreefoldMethod { Naive, CharSum, TwistProduct };

inline const char* to_string(ThreefoldMethod m)
{
    switch (m) {
    case ThreefoldMethod::Naive: return "naive";
    case ThreefoldMethod::CharSum: return "charsum";
    case ThreefoldMethod::TwistProduct: return "twistproduct";
    }
    return "?";
}

inline constexpr std::int64_t kNaiveThreefoldBound = 150;
inline constexpr std::int64_t kCharSumThreefoldBound = 3000;

struct ThreefoldCount {
    std::int64_t p = 0;
    Int W;  // affine solutions
    Int NV; // projective closure
};

namespace detail {

inline Int threefold_naive(std::int64_t p)
{
    // roots[u] = #{x : x^3 = u}
    std::vector<std::int64_t> roots(static_cast<std::size_t>(p), 0);
    for (std::int64_t x = 0; x < p; ++x)
        ++roots[static_cast<std::size_t>(x * x % p * x % p)];
    std::vector<std::int64_t> g(static_cast<std::size_t>(p));
    for (std::int64_t y = 0; y < p; ++y)
        g[static_cast<std::size_t>(y)] = y * (y + 1) % p;
    std::int64_t W = 0;
    for (std::int64_t y1 = 0; y1 < p; ++y1)
        for (std::int64_t y2 = 0; y2 < p; ++y2) {
            const std::int64_t u12 = g[y1] * g[y2] % p;
            for (std::int64_t y3 = 0; y3 < p; ++y3)
                W += roots[static_cast<std::size_t>(u12 * g[y3] % p)];
        }
    return W;
}

/// W = p^3 + S^3 + conj(S)^3 with S = sum_y rho(y(y+1)) in Z[w].
inline Int threefold_charsum(std::int64_t p)
{
    if (p % 3 != 1)
        return int_pow(p, 3);
    const Field& f = *cached_field(p, 1);
    std::int64_t bins[3] = {0, 0, 0};
    for (std::int64_t y = 1; y + 1 < p; ++y)
        ++bins[f.cube_class(static_cast<Elem>(y * (y + 1) % p))];
    const EisInt S(Int(bins[0] - bins[2]), Int(bins[1] - bins[2])); // 1, w, w^2 = -1 - w
    const EisInt total = EisInt(int_pow(p, 3)) + S.pow(3) + S.conj().pow(3);
    if (total.b != 0)
        fail(ErrorCode::Inconsistency, "character-sum count is not rational");
    return total.a;
}

inline Int threefold_twists(std::int64_t p)
{
    if (p % 3 != 1)
        return int_pow(p, 3);
    const auto [t1, t2, t3] = cubic_twist_traces(p);
    return Int(p + 1 - t1) * (p + 1 - t2) * (p + 1 - t3) - 1;
}

} // namespace detail

inline ThreefoldCount count_threefold(std::int64_t p, ThreefoldMethod method)
{
    if (!is_prime(p) || p == 3)
        fail(ErrorCode::InvalidArgument, "threefold count needs a prime p != 3");
    ThreefoldCount out;
    out.p = p;
    switch (method) {
    case ThreefoldMethod::Naive:
        if (p > kNaiveThreefoldBound)
            fail(ErrorCode::TooLargeForMethod, "naive count limited to p <= " + std::to_string(kNaiveThreefoldBound));
        out.W = detail::threefold_naive(p);
        break;
    case ThreefoldMethod::CharSum:
        if (p > kCharSumThreefoldBound)
            fail(ErrorCode::TooLargeForMethod,
                 "character-sum count limited to p <= " + std::to_string(kCharSumThreefoldBound));
        out.W = detail::threefold_charsum(p);
        break;
    case ThreefoldMethod::TwistProduct:
        out.W = detail::threefold_twists(p);
        break;
    }
    out.NV = out.W + 1 + Int(3) * p * p;
    return out;
}

/// Points at infinity split as 3(p-1)^2 + 3(p-1) + 1 + 3(p-1) + 3 = 3p^2 + 1.
inline bool infinity_count_check(std::int64_t p)
{
    const Int lhs = Int(3) * (p - 1) * (p - 1) + Int(3) * (p - 1) + 1 + Int(3) * (p - 1) + 3;
    return lhs == Int(3) * p * p + 1;
}

/// b(p) from the eta expansion equals p^3 + 3p^2 + 1 - N(V, p).
inline bool modularity_check(std::int64_t p, ThreefoldMethod method = ThreefoldMethod::CharSum)
{
    const EtaProduct eta = eta3z8(p);
    const ThreefoldCount tc = count_threefold(p, method);
    return Int(eta[p]) == int_pow(p, 3) + Int(3) * p * p + 1 - tc.NV;
}

} // namespace hh
