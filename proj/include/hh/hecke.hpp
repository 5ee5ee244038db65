#pragma once

// Traces of T_k(p) on S_k(Gamma_0(3)) and S_k(Gamma_0(9)) by the class-number
// formula, by sums over the E_t family, by hypergeometric sums and by
// recursion in the weight.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hh/class_number.hpp"
#include "hh/elliptic.hpp"
#include "hh/hypergeometric.hpp"
#include "hh/numeric.hpp"

namespace hh {

/// Sum_j (-1)^j C(k-2-j, j) p^j s^(k-2j-2).
inline Int G_closed(unsigned k, std::int64_t s, std::int64_t p)
{
    if (k < 2)
        fail(ErrorCode::InvalidArgument, "G_k needs k >= 2");
    Int total = 0;
    for (unsigned j = 0; 2 * j <= k - 2; ++j) {
        // C(k-2-j, j)
        Int binom = 1;
        for (unsigned i = 0; i < j; ++i)
            binom = binom * (k - 2 - j - i) / (i + 1);
        Int term = binom * int_pow(p, j) * int_pow(s, k - 2 * j - 2);
        total += (j % 2 == 0) ? term : Int(-term);
    }
    return total;
}

/// G_2 = 1, G_3 = s, G_k = s G_{k-1} - p G_{k-2}.
inline Int G_recurrence(unsigned k, const Int& s, std::int64_t p)
{
    if (k < 2)
        fail(ErrorCode::InvalidArgument, "G_k needs k >= 2");
    Int prev = 1, cur = s;
    if (k == 2)
        return prev;
    for (unsigned i = 3; i < k; ++i) {
        Int next = s * cur - Int(p) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// G_k(s, p); closed form checked against the recurrence.
inline Int G(unsigned k, std::int64_t s, std::int64_t p)
{
    Int closed = G_closed(k, s, p);
    if (closed != G_recurrence(k, Int(s), p))
        fail(ErrorCode::Inconsistency, "G_k closed form and recurrence disagree");
    return closed;
}

inline Int G(unsigned k, const Int& s, std::int64_t p) { return G_recurrence(k, s, p); }

inline Rational delta_term(unsigned k, std::int64_t p) { return k == 2 ? Rational(1 + p) : Rational(0); }

/// c(s, f, 3) and c(s, f, 9) for f | t, s^2 - 4p = t^2 D.
inline std::int64_t c_weight(std::int64_t s, std::int64_t f, int level, std::int64_t p)
{
    if (level != 3 && level != 9)
        fail(ErrorCode::InvalidArgument, "level must be 3 or 9");
    const auto fd = fundamental_factorization(s * s - 4 * p);
    if (f <= 0 || fd.t % f != 0)
        fail(ErrorCode::NotADivisor, std::to_string(f) + " does not divide " + std::to_string(fd.t));
    const int tau = valuation(fd.t, 3);
    const int rho = valuation(f, 3);
    const std::int64_t dm = mod(fd.D, 3);
    if (level == 3)
        return tau == rho ? 1 + kronecker(fd.D, 3) : 2;
    if (tau == rho)
        return dm == 1 ? 2 : 0;
    if (tau == rho + 1)
        return dm == 1 ? 5 : dm == 2 ? 3 : 4;
    return 4;
}

/// sum_{f | t} h*((s^2 - 4p)/f^2) c(s, f, level).
inline Rational weighted_class_sum(std::int64_t s, std::int64_t p, int level)
{
    const std::int64_t n = s * s - 4 * p;
    const auto fd = fundamental_factorization(n);
    Rational total = 0;
    for (std::int64_t f : divisors(fd.t))
        total += h_star(n / (f * f)) * c_weight(s, f, level, p);
    return total;
}

inline void check_trace_args(int level, unsigned k, std::int64_t p)
{
    if (level != 3 && level != 9)
        fail(ErrorCode::InvalidArgument, "level must be 3 or 9");
    if (k < 2 || k % 2 != 0)
        fail(ErrorCode::InvalidArgument, "weight must be even and >= 2");
    if (!is_prime(p))
        fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p == 3)
        fail(ErrorCode::InvalidArgument, "p must not divide the level");
}

/// K(p, level) including the s = 0 contribution.
/// Level 3: 2 + (1/2)(-p)^{k/2-1}(1 + (-p|3)) H*(-4p).
/// Level 9: 2 + 2[p = 1 mod 3] + (1/2)(-p)^{k/2-1} sum_f h*(-4p/f^2) c(0, f, 9).
inline Rational K_term(std::int64_t p, int level, unsigned k)
{
    check_trace_args(level, k, p);
    const Rational g0(G(k, 0, p));
    if (level == 3)
        return Rational(2) + Rational(1, 2) * g0 * (1 + kronecker(-p, 3)) * hurwitz(-4 * p).Hstar;
    const Rational base = p % 3 == 1 ? 4 : 2;
    return base + Rational(1, 2) * g0 * weighted_class_sum(0, p, 9);
}

inline Int require_integer(const Rational& r, const std::string& what)
{
    if (!is_integer(r))
        fail(ErrorCode::NonIntegralTrace, what + " evaluated to " + to_exact_string(r));
    return boost::multiprecision::numerator(r);
}

using Breakdown = std::vector<std::pair<std::string, Rational>>;

struct MethodResult {
    Int value;
    Breakdown terms;
};

/// -1/2 sum_{0<|s|<2 sqrt p} G_k(s,p) sum_f h* c(s,f,level) - K + delta(k)(1+p).
inline MethodResult hijikata_trace(int level, unsigned k, std::int64_t p)
{
    check_trace_args(level, k, p);
    Rational main = 0;
    for (std::int64_t s = 1; s * s < 4 * p; ++s)
        main += Rational(G(k, s, p)) * weighted_class_sum(s, p, level) * 2; // +s and -s
    main *= Rational(-1, 2);
    const Rational K = K_term(p, level, k);
    const Rational d = delta_term(k, p);
    const Rational total = main - K + d;
    return {require_integer(total, "class-number trace"), {{"main_sum", main}, {"K", K}, {"delta", d}}};
}

/// (epsilon_3, epsilon_4): the corrections turning the H* form into the H form.
inline std::pair<Rational, Rational> epsilon_factors(std::int64_t p, int level, unsigned k)
{
    check_trace_args(level, k, p);
    if (p == 2)
        fail(ErrorCode::InvalidArgument, "corrective factors need p > 3");
    const Decomposition dec = decompose(p);
    Rational e3 = 0, e4 = 0;
    if (level == 3 || p % 3 == 2) {
        if (dec.ab) {
            const auto [a, b] = *dec.ab;
            if (b % 3 == 0)
                e4 = Rational(G(k, 2 * b, p)) * Rational(1, 2) * (1 + kronecker(-4, 3)) + Rational(2) * G(k, 2 * a, p);
            else
                e4 = Rational(1, 2) * (Rational(G(k, 2 * a, p)) + G(k, 2 * b, p)) * (1 + kronecker(-4, 3));
        }
        if (dec.cd) {
            const auto [c, d] = *dec.cd;
            e3 = Rational(2, 3) * (Rational(G(k, (c + 3 * d) / 2, p)) + G(k, std::abs(c - 3 * d) / 2, p)) *
                     (1 + kronecker(-3, 3)) +
                 Rational(8, 3) * G(k, c, p);
        }
    } else {
        if (dec.ab)
            e4 = Rational(6) * G(k, 2 * dec.ab->first, p);
        if (dec.cd)
            e3 = Rational(8) * G(k, dec.cd->first, p);
    }
    return {e3, e4};
}

/// The same trace written with H instead of H*, plus the corrective factors.
inline MethodResult hijikata_trace_h_form(int level, unsigned k, std::int64_t p)
{
    check_trace_args(level, k, p);
    const auto [e3, e4] = epsilon_factors(p, level, k);
    Rational main = 0;
    Rational K = 0;
    if (level == 3 || p % 3 == 2) {
        for (std::int64_t s = 1; s * s < 4 * p; ++s) {
            const std::int64_t n = s * s - 4 * p;
            const auto fd = fundamental_factorization(n);
            const Rational g(G(k, s, p));
            main -= g * (1 + kronecker(n, 3)) * hurwitz(n).H;
            if (fd.t % 3 == 0)
                main -= g * 3 * hurwitz(n / 9).H;
        }
        K = K_term(p, 3, k);
    } else {
        for (std::int64_t s = 1; s * s < 4 * p; ++s) {
            const std::int64_t n = s * s - 4 * p;
            if (fundamental_factorization(n).t % 3 == 0)
                main -= Rational(G(k, s, p)) * 12 * hurwitz(n / 9).H; // 6 per sign of s
        }
        K = 4;
    }
    const Rational d = delta_term(k, p);
    const Rational total = main - K + e3 + e4 + d;
    return {require_integer(total, "H-form trace"),
            {{"main_sum", main}, {"K", K}, {"epsilon3", e3}, {"epsilon4", e4}, {"delta", d}}};
}

// ---------------------------------------------------------------------------
// Routes through the E_t family.

/// Frobenius traces of E_{1, x/27} for every x in F_p; the 2F1 values over
/// F_{p^m} follow from them.
class TraceTable {
public:
    explicit TraceTable(std::int64_t p) : p_(p), traces_(static_cast<std::size_t>(p), 0)
    {
        if (p <= 3)
            return;
        const Field& f = *cached_field(p, 1);
        const std::int64_t inv27 = inv_mod(27, p);
        for (std::int64_t x = 2; x < p; ++x)
            traces_[static_cast<std::size_t>(x)] = frobenius_trace(f, Curve{1, x * inv27 % p});
    }

    std::int64_t p() const noexcept { return p_; }

    /// 2F1(rho, rho^2; eps | x)_{p^m} for x in F_p.
    Rational value(std::int64_t x, unsigned m) const
    {
        x = mod(x, p_);
        if (x == 0)
            return 0;
        if (x == 1)
            fail(ErrorCode::BadReduction, "argument 1 is not covered by the trace table");
        return Rational(-lift_trace(traces_[static_cast<std::size_t>(x)], p_, m), int_pow(p_, m));
    }

    /// p^m * value, an integer.
    Int scaled(std::int64_t x, unsigned m) const
    {
        x = mod(x, p_);
        if (x == 0)
            return 0;
        return -lift_trace(traces_[static_cast<std::size_t>(x)], p_, m);
    }

private:
    std::int64_t p_;
    std::vector<std::int64_t> traces_;
};

/// Fields up to this size are also checked by the single-sum evaluation.
inline constexpr std::uint64_t kDirectCrossCheckBound = 20000;

/// Compares the trace-table value with the direct single sum over F_{p^m}
/// for every x in F_p \ {0, 1}; returns the number of comparisons made.
inline int cross_check_trace_table(const TraceTable& tt, unsigned m,
                                   std::uint64_t bound = kDirectCrossCheckBound)
{
    const std::int64_t p = tt.p();
    if (p <= 3 || m == 0)
        return 0;
    Int q = int_pow(p, m);
    if (q > bound || q % 3 != 1)
        return 0;
    const Field& f = *cached_field(p, m, bound);
    int checks = 0;
    for (std::int64_t x = 2; x < p; ++x) {
        if (fast_2f1_rho(f, f.from_int(x)) != tt.value(x, m))
            fail(ErrorCode::Inconsistency, "2F1 over F_" + q.str() + " at " + std::to_string(x) +
                                               " disagrees with the trace of E_{1,x/27}");
        ++checks;
    }
    return checks;
}

/// gamma_k(p): the average of a_{p^{k-2}} over the three cubic twists
/// y^2 + a^i y = x^3 when p = 1 mod 3, (-p)^{k/2-1} when p = 2 mod 3.
inline Rational gamma_k(unsigned k, std::int64_t p)
{
    if (p % 3 == 2)
        return Rational(int_pow(-p, k / 2 - 1));
    const Field& f = *cached_field(p, 1);
    const std::int64_t a = find_noncube(f);
    Int total = 0;
    std::int64_t ai = 1;
    for (int i = 1; i <= 3; ++i) {
        ai = ai * a % p;
        total += a_coefficient(frobenius_trace(f, Curve{0, ai}), p, k);
    }
    return Rational(total, 3);
}

/// gamma_k(p) written with 2F1(9/8) values.
inline Rational gamma_k_hypergeom(unsigned k, std::int64_t p, const TraceTable& tt)
{
    if (p % 3 == 2)
        return Rational(int_pow(-p, k / 2 - 1));
    const std::int64_t x = 9 * inv_mod(8, p) % p;
    Rational total = 0;
    for (unsigned i = 0; i + 2 <= k / 2; ++i) {
        const unsigned m = k - 2 - 2 * i;
        if (m % 3 == 0)
            total -= Rational(int_pow(p, k - 2 - i)) * tt.value(x, m);
    }
    return total + Rational(int_pow(p, k / 2 - 1));
}

/// beta_k(p) of the weight recursion.
inline Rational beta_k(unsigned k, std::int64_t p, const TraceTable& tt)
{
    if (p % 3 == 2)
        return Rational(2 * int_pow(-p, k / 2 - 1));
    if (k % 3 != 2)
        return 0;
    return -Rational(int_pow(p, k - 2)) * tt.value(9 * inv_mod(8, p) % p, k - 2);
}

/// -sum_{Delta_t != 0} a_{p^{k-2}}(E_t) - gamma_k(p) - 2.
inline MethodResult curve_sum_trace3(unsigned k, std::int64_t p)
{
    check_trace_args(3, k, p);
    if (k < 4)
        fail(ErrorCode::InvalidArgument, "family sum needs k >= 4");
    Int sum = 0;
    if (p > 3) {
        const Field& f = *cached_field(p, 1);
        for (std::int64_t t = 0; t < p; ++t) {
            const Curve e = Curve::family(t);
            if (!e.good_at(p))
                continue;
            sum += a_coefficient(frobenius_trace(f, e), p, k);
        }
    }
    const Rational gamma = gamma_k(k, p);
    const Rational total = Rational(-sum) - gamma - 2;
    return {require_integer(total, "family-sum trace"), {{"family_sum", Rational(-sum)}, {"gamma", gamma}}};
}

/// sum_i p^{k-2-i} sum_{t=2}^{p-1} 2F1(t)_{p^{k-2-2i}} - p^{k/2-1}(p-2) - gamma_k - 2.
inline MethodResult hypergeom_trace3(unsigned k, std::int64_t p, const TraceTable& tt)
{
    check_trace_args(3, k, p);
    if (k < 4)
        fail(ErrorCode::InvalidArgument, "hypergeometric sum needs k >= 4");
    Rational sum = 0;
    for (unsigned i = 0; i + 2 <= k / 2; ++i) {
        const unsigned m = k - 2 - 2 * i;
        Rational inner = 0;
        for (std::int64_t t = 2; t < p; ++t)
            inner += tt.value(t, m);
        sum += Rational(int_pow(p, k - 2 - i)) * inner;
    }
    const Rational shift = Rational(int_pow(p, k / 2 - 1)) * (p - 2);
    const Rational gamma = gamma_k_hypergeom(k, p, tt);
    const Rational total = sum - shift - gamma - 2;
    return {require_integer(total, "hypergeometric trace"),
            {{"hypergeometric_sum", sum}, {"shift", -shift}, {"gamma", gamma}}};
}

inline MethodResult hypergeom_trace3(unsigned k, std::int64_t p) { return hypergeom_trace3(k, p, TraceTable(p)); }

/// p^{k-2} sum_t 2F1(t)_{p^{k-2}} + p tr_{k-2} + 2p - 2 - beta_k, from k = 4.
inline MethodResult inductive_trace3(unsigned k, std::int64_t p, const TraceTable& tt)
{
    check_trace_args(3, k, p);
    if (k < 4)
        fail(ErrorCode::InvalidArgument, "weight recursion starts at k = 4");
    MethodResult cur = curve_sum_trace3(4, p);
    cur.terms = {{"ground_k4", Rational(cur.value)}};
    for (unsigned w = 6; w <= k; w += 2) {
        Rational inner = 0;
        for (std::int64_t t = 2; t < p; ++t)
            inner += tt.value(t, w - 2);
        const Rational lead = Rational(int_pow(p, w - 2)) * inner;
        const Rational beta = beta_k(w, p, tt);
        const Rational previous = Rational(p) * Rational(cur.value);
        const Rational total = lead + previous + (2 * p - 2) - beta;
        cur.value = require_integer(total, "recursive trace");
        if (w == k)
            cur.terms = {{"leading_sum", lead}, {"p_times_previous", previous}, {"beta", beta}};
    }
    return cur;
}

inline MethodResult inductive_trace3(unsigned k, std::int64_t p) { return inductive_trace3(k, p, TraceTable(p)); }

// ---------------------------------------------------------------------------
// Level 9.

/// Frobenius trace of y^2 + y = x^3.
inline std::int64_t trace_j0(std::int64_t p) { return frobenius_trace(Curve{0, 1}, p); }

/// p = 1 mod 3: -sum_{t=2, t^3 != 1} G_k(p 2F1(t^3)_p, p) - G_k(c, p) - 4 + delta(k)(1+p).
/// p = 2 mod 3: the level-3 trace.
inline MethodResult trace9(unsigned k, std::int64_t p)
{
    check_trace_args(9, k, p);
    if (p % 3 == 2) {
        if (k < 4)
            return hijikata_trace(3, k, p);
        return curve_sum_trace3(k, p);
    }
    const Field& f = *cached_field(p, 1);
    Int sum = 0;
    for (std::int64_t t = 2; t < p; ++t) {
        const Elem t3 = f.pow(f.from_int(t), 3);
        if (t3 == 1)
            continue;
        const Rational scaled = Rational(p) * fast_2f1_rho(f, t3);
        sum += G(k, require_integer(scaled, "p * 2F1"), p);
    }
    const std::int64_t c = trace_j0(p);
    const Int gc = G(k, c, p);
    const Rational total = Rational(-sum) - gc - 4 + delta_term(k, p);
    return {require_integer(total, "level-9 hypergeometric trace"),
            {{"hypergeometric_sum", Rational(-sum)}, {"G_k(c)", Rational(-gc)}, {"delta", delta_term(k, p)}}};
}

/// -sum_{t=1, t^3 != 27} a_{p^{k-2}}(E_{t^3}) - a_{p^{k-2}}(E_24) - 4, p = 1 mod 3.
inline MethodResult curve_sum_trace9(unsigned k, std::int64_t p)
{
    check_trace_args(9, k, p);
    if (k < 4)
        fail(ErrorCode::InvalidArgument, "family sum needs k >= 4");
    if (p % 3 != 1)
        return curve_sum_trace3(k, p);
    const Field& f = *cached_field(p, 1);
    Int sum = 0;
    for (std::int64_t t = 1; t < p; ++t) {
        const std::int64_t t3 = t * t % p * t % p;
        if (t3 == 27 % p)
            continue;
        sum += a_coefficient(frobenius_trace(f, Curve::family(t3)), p, k);
    }
    const Int a24 = a_coefficient(frobenius_trace(f, Curve::family(24)), p, k);
    const Rational total = Rational(-sum) - Rational(a24) - 4;
    return {require_integer(total, "level-9 family-sum trace"),
            {{"family_sum", Rational(-sum)}, {"a(E_24)", Rational(-a24)}}};
}

/// Weight recursion at level 9 from k = 4; p = 2 mod 3 reduces to level 3.
inline MethodResult inductive_trace9(unsigned k, std::int64_t p, const TraceTable& tt, unsigned ground = 4)
{
    check_trace_args(9, k, p);
    if (p % 3 != 1)
        return inductive_trace3(k, p, tt);
    if (ground != 2 && ground != 4)
        fail(ErrorCode::InvalidArgument, "recursion is grounded at k = 2 or k = 4");
    if (k < ground)
        fail(ErrorCode::InvalidArgument, "weight below the recursion ground");
    MethodResult cur;
    cur.value = ground == 4 ? trace9(4, p).value : Int(0);
    cur.terms = {{"ground", Rational(cur.value)}};
    const std::int64_t x98 = 9 * inv_mod(8, p) % p;
    const Field& f = *cached_field(p, 1);
    for (unsigned w = ground + 2; w <= k; w += 2) {
        Rational inner = 0;
        for (std::int64_t t = 2; t < p; ++t) {
            const Elem t3 = f.pow(f.from_int(t), 3);
            if (t3 == 1)
                continue;
            inner += tt.value(t3, w - 2);
        }
        const Rational lead = Rational(int_pow(p, w - 2)) * (inner + tt.value(x98, w - 2));
        const Rational dterm = w - 2 == 2 ? Rational(p * (p + 1)) : Rational(0);
        const Rational total = lead - 4 + 4 * p - dterm + Rational(p) * Rational(cur.value);
        cur.value = require_integer(total, "level-9 recursive trace");
        if (w == k)
            cur.terms = {{"leading_sum", lead}, {"delta_k_minus_2", -dterm}};
    }
    return cur;
}

inline MethodResult inductive_trace9(unsigned k, std::int64_t p) { return inductive_trace9(k, p, TraceTable(p)); }

// ---------------------------------------------------------------------------

struct TraceReport {
    int level = 3;
    unsigned k = 4;
    std::int64_t p = 0;
    std::optional<Int> hijikata;
    std::optional<Int> curve_sum;
    std::optional<Int> hypergeom_sum;
    std::optional<Int> inductive;
    std::map<std::string, Breakdown> breakdown;

    std::vector<Int> present() const
    {
        std::vector<Int> v;
        for (const auto* m : {&hijikata, &curve_sum, &hypergeom_sum, &inductive})
            if (*m)
                v.push_back(**m);
        return v;
    }

    bool agree() const
    {
        const auto v = present();
        for (const auto& x : v)
            if (x != v.front())
                return false;
        return !v.empty();
    }

    Int value() const
    {
        const auto v = present();
        if (v.empty())
            fail(ErrorCode::Inconsistency, "no method produced a value");
        if (!agree())
            fail(ErrorCode::Inconsistency, "trace methods disagree");
        return v.front();
    }
};

/// Every applicable route for (level, k, p).
inline TraceReport trace_report(int level, unsigned k, std::int64_t p)
{
    check_trace_args(level, k, p);
    TraceReport r;
    r.level = level;
    r.k = k;
    r.p = p;
    auto take = [&](std::optional<Int>& slot, const char* name, const MethodResult& m) {
        slot = m.value;
        r.breakdown[name] = m.terms;
    };
    take(r.hijikata, "hijikata", hijikata_trace(level, k, p));
    if (k < 4)
        return r;
    const TraceTable tt(p);
    if (level == 3 || p % 3 != 1) {
        take(r.curve_sum, "curve_sum", curve_sum_trace3(k, p));
        take(r.hypergeom_sum, "hypergeom_sum", hypergeom_trace3(k, p, tt));
        take(r.inductive, "inductive", inductive_trace3(k, p, tt));
    } else {
        take(r.curve_sum, "curve_sum", curve_sum_trace9(k, p));
        take(r.hypergeom_sum, "hypergeom_sum", trace9(k, p));
        take(r.inductive, "inductive", inductive_trace9(k, p, tt));
    }
    return r;
}

} // namespace hh
