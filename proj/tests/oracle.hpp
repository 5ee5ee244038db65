#pragma once

// Slow reference computations used only by the tests. Nothing here calls into
// the library; everything works from the definitions with plain integers.

#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925;

inline i64 md(i64 a, i64 m) { return ((a % m) + m) % m; }

inline i64 pw(i64 b, i64 e, i64 m)
{
    i64 r = 1 % m;
    b = md(b, m);
    while (e > 0) {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline i64 inv(i64 a, i64 p) { return pw(a, p - 2, p); }

inline bool prime(i64 n)
{
    if (n < 2)
        return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Smallest g whose powers hit every nonzero residue.
inline i64 primitive_root(i64 p)
{
    for (i64 g = 2; g < p; ++g) {
        std::set<i64> seen;
        i64 x = 1;
        for (i64 i = 0; i < p - 1; ++i) {
            seen.insert(x);
            x = x * g % p;
        }
        if (static_cast<i64>(seen.size()) == p - 1)
            return g;
    }
    return 1;
}

/// Set of nonzero cubes mod p.
inline std::set<i64> cubes(i64 p)
{
    std::set<i64> s;
    for (i64 x = 1; x < p; ++x)
        s.insert(x * x % p * x % p);
    return s;
}

// --- curves y^2 + a1 x y + a3 y = x^3 -----------------------------------------

/// #E(F_p) by the double loop over (x, y), plus the point at infinity.
inline i64 count_points(i64 a1, i64 a3, i64 p)
{
    i64 n = 1;
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            if (md(y * y + a1 * x % p * y + a3 * y - x * x % p * x, p) == 0)
                ++n;
    return n;
}

/// F_{p^2} = F_p[s]/(s^2 - r) with r a nonresidue; elements (u, v) = u + v s.
struct Fp2 {
    i64 p, r;

    explicit Fp2(i64 prime_p) : p(prime_p), r(2)
    {
        while (pw(r, (p - 1) / 2, p) != p - 1)
            ++r;
    }
    using E = std::pair<i64, i64>;
    E add(E a, E b) const { return {md(a.first + b.first, p), md(a.second + b.second, p)}; }
    E mul(E a, E b) const
    {
        return {md(a.first * b.first + a.second * b.second % p * r, p),
                md(a.first * b.second + a.second * b.first, p)};
    }
    E scal(i64 c, E a) const { return {md(c * a.first, p), md(c * a.second, p)}; }
};

/// #E(F_{p^2}) by the double loop, p odd.
inline i64 count_points_p2(i64 a1, i64 a3, i64 p)
{
    const Fp2 F(p);
    i64 n = 1;
    for (i64 x0 = 0; x0 < p; ++x0)
        for (i64 x1 = 0; x1 < p; ++x1) {
            const Fp2::E x{x0, x1};
            const Fp2::E x3 = F.mul(F.mul(x, x), x);
            for (i64 y0 = 0; y0 < p; ++y0)
                for (i64 y1 = 0; y1 < p; ++y1) {
                    const Fp2::E y{y0, y1};
                    Fp2::E lhs = F.add(F.mul(y, y), F.mul(F.scal(a1, x), y));
                    lhs = F.add(lhs, F.scal(a3, y));
                    lhs = F.add(lhs, F.scal(-1, x3));
                    if (lhs.first == 0 && lhs.second == 0)
                        ++n;
                }
        }
    return n;
}

struct Pt {
    bool inf = true;
    i64 x = 0, y = 0;
};

/// Chord-tangent addition on y^2 + a1 x y + a3 y = x^3 over F_p.
inline Pt add(const Pt& P, const Pt& Q, i64 a1, i64 a3, i64 p)
{
    if (P.inf)
        return Q;
    if (Q.inf)
        return P;
    const auto neg_y = [&](const Pt& R) { return md(-R.y - a1 * R.x - a3, p); };
    if (P.x == Q.x && Q.y == neg_y(P))
        return {};
    i64 lam;
    if (P.x == Q.x) {
        const i64 num = md(3 * P.x * P.x - a1 * P.y, p);
        const i64 den = md(2 * P.y + a1 * P.x + a3, p);
        lam = num * inv(den, p) % p;
    } else {
        lam = md(Q.y - P.y, p) * inv(md(Q.x - P.x, p), p) % p;
    }
    const i64 nu = md(P.y - lam * P.x, p);
    const i64 x3 = md(lam * lam + a1 * lam - P.x - Q.x, p);
    const i64 y3 = md(-(lam + a1) * x3 - nu - a3, p);
    return {false, x3, y3};
}

/// Number of P in E(F_p) with 3P = O (including O).
inline int three_torsion(i64 a1, i64 a3, i64 p)
{
    int n = 1;
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y) {
            if (md(y * y + a1 * x % p * y + a3 * y - x * x % p * x, p) != 0)
                continue;
            const Pt P{false, x, y};
            const Pt P2 = add(P, P, a1, a3, p);
            if (add(P2, P, a1, a3, p).inf)
                ++n;
        }
    return n;
}

// --- characters over F_p -------------------------------------------------------

/// Multiplicative characters T^m(g^k) = exp(2 pi i mk/(p-1)), theta(x) = exp(2 pi i x/p).
struct PrimeChars {
    i64 p, g;
    std::vector<i64> log;

    explicit PrimeChars(i64 prime_p) : p(prime_p), g(primitive_root(prime_p)), log(static_cast<std::size_t>(prime_p), -1)
    {
        i64 x = 1;
        for (i64 k = 0; k < p - 1; ++k) {
            log[static_cast<std::size_t>(x)] = k;
            x = x * g % p;
        }
    }
    cplx chi(i64 m, i64 x) const
    {
        x = md(x, p);
        if (x == 0)
            return 0.0;
        return std::polar(1.0, kTwoPi * static_cast<double>(md(m * log[static_cast<std::size_t>(x)], p - 1)) /
                                   static_cast<double>(p - 1));
    }
    cplx theta(i64 x) const { return std::polar(1.0, kTwoPi * static_cast<double>(md(x, p)) / static_cast<double>(p)); }

    cplx gauss(i64 m) const
    {
        cplx s = 0.0;
        for (i64 x = 1; x < p; ++x)
            s += chi(m, x) * theta(x);
        return s;
    }
    /// B(-1)/p sum_x A(x) conj(B)(1 - x).
    cplx binomial(i64 a, i64 b) const
    {
        cplx s = 0.0;
        for (i64 x = 0; x < p; ++x)
            s += chi(a, x) * chi(-b, 1 - x);
        return s * chi(b, -1) / static_cast<double>(p);
    }
};

// --- quadratic forms -----------------------------------------------------------

/// Reduced forms (a, b, c) of discriminant d < 0: |b| <= a <= c, b >= 0 if |b| = a or a = c.
/// With primitive_only the count is the class number h(d); otherwise it is H(d).
inline i64 reduced_forms(i64 d, bool primitive_only)
{
    i64 n = 0;
    for (i64 a = 1; 3 * a * a <= -d; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 num = b * b - d;
            if (num % (4 * a) != 0)
                continue;
            const i64 c = num / (4 * a);
            if (c < a || (a == c && b < 0))
                continue;
            if (primitive_only && std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1)
                continue;
            ++n;
        }
    return n;
}

// --- q-series ------------------------------------------------------------------

/// Coefficients of q^{leading} prod_n prod_i (1 - q^{m_i n})^{r_i} up to q^N, r_i >= 0,
/// by repeated multiplication with every factor (1 - q^{m n}).
inline std::vector<i64> eta_product(const std::vector<std::pair<int, int>>& factors, i64 leading, i64 N)
{
    std::vector<i64> c(static_cast<std::size_t>(N + 1), 0);
    if (leading > N)
        return c;
    const i64 M = N - leading;
    std::vector<i64> s(static_cast<std::size_t>(M + 1), 0);
    s[0] = 1;
    for (const auto& [m, r] : factors)
        for (int rep = 0; rep < r; ++rep)
            for (i64 n = 1; n * m <= M; ++n)
                for (i64 k = M; k >= n * m; --k)
                    s[static_cast<std::size_t>(k)] -= s[static_cast<std::size_t>(k - n * m)];
    for (i64 k = 0; k <= M; ++k)
        c[static_cast<std::size_t>(k + leading)] = s[static_cast<std::size_t>(k)];
    return c;
}

// --- threefold -----------------------------------------------------------------

/// Affine solutions of x^3 = y1 y2 y3 (y1+1)(y2+1)(y3+1) over F_p, all four coordinates looped.
inline i64 threefold_affine(i64 p)
{
    i64 n = 0;
    for (i64 y1 = 0; y1 < p; ++y1)
        for (i64 y2 = 0; y2 < p; ++y2)
            for (i64 y3 = 0; y3 < p; ++y3) {
                const i64 rhs = y1 * (y1 + 1) % p * y2 % p * (y2 + 1) % p * y3 % p * (y3 + 1) % p;
                for (i64 x = 0; x < p; ++x)
                    if (x * x % p * x % p == rhs)
                        ++n;
            }
    return n;
}

} // namespace oracle
