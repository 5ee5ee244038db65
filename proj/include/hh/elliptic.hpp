#pragma once

// The curves y^2 + a1 xy + a3 y = x^3, their point counts and Frobenius
// traces, and the isomorphism-class census over F_p.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "hh/field.hpp"
#include "hh/hypergeometric.hpp"
#include "hh/numeric.hpp"

namespace hh {

/// y^2 + a1 xy + a3 y = x^3 over Z; reduced as needed.
struct Curve {
    std::int64_t a1 = 0;
    std::int64_t a3 = 0;

    /// The one-parameter family y^2 + t xy + t^2 y = x^3.
    static Curve family(std::int64_t t) { return {t, t * t}; }

    /// a3^3 (a1^3 - 27 a3) modulo p.
    std::int64_t discriminant_mod(std::int64_t p) const
    {
        const std::int64_t b1 = mod(a1, p), b3 = mod(a3, p);
        const std::int64_t cube3 = b3 * b3 % p * b3 % p;
        const std::int64_t cube1 = b1 * b1 % p * b1 % p;
        return cube3 * mod(cube1 - 27 * b3, p) % p;
    }

    bool good_at(std::int64_t p) const { return discriminant_mod(p) != 0; }
};

/// Number of projective points over f; the quadratic-character count
/// q + 1 + sum_x chi((a1 x + a3)^2 + 4x^3).
inline std::int64_t count_points(const Field& f, const Curve& c)
{
    if (!c.good_at(f.p()))
        fail(ErrorCode::BadReduction, "curve (" + std::to_string(c.a1) + ", " + std::to_string(c.a3) +
                                          ") has bad reduction at " + std::to_string(f.p()));
    const Elem a1 = f.from_int(c.a1), a3 = f.from_int(c.a3), four = f.from_int(4);
    std::int64_t s = 0;
    for (std::uint64_t xx = 0; xx < f.q(); ++xx) {
        const auto x = static_cast<Elem>(xx);
        const Elem lin = f.add(f.mul(a1, x), a3);
        const Elem d = f.add(f.mul(lin, lin), f.mul(four, f.mul(x, f.mul(x, x))));
        s += f.quadratic_character(d);
    }
    return static_cast<std::int64_t>(f.q()) + 1 + s;
}

inline std::int64_t count_points(const Curve& c, std::int64_t p, unsigned e = 1)
{
    return count_points(*cached_field(p, e), c);
}

/// t_q = q + 1 - #E(F_q).
inline std::int64_t frobenius_trace(const Field& f, const Curve& c)
{
    return static_cast<std::int64_t>(f.q()) + 1 - count_points(f, c);
}

inline std::int64_t frobenius_trace(const Curve& c, std::int64_t p, unsigned e = 1)
{
    return frobenius_trace(*cached_field(p, e), c);
}

inline void check_hasse(std::int64_t t, std::int64_t p)
{
    if (Int(t) * t > Int(4) * p)
        fail(ErrorCode::HasseViolation, "|" + std::to_string(t) + "| > 2 sqrt(" + std::to_string(p) + ")");
}

/// t_{p^k} from t_p: seeds 2, t_p, then t_p * prev - p * prevprev.
inline Int lift_trace(std::int64_t t, std::int64_t p, unsigned k)
{
    check_hasse(t, p);
    Int prev = 2, cur = t;
    if (k == 0)
        return prev;
    for (unsigned i = 1; i < k; ++i) {
        Int next = Int(t) * cur - Int(p) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// a_{p^e} from a_p: seeds 1, a_p, same recurrence.
inline Int a_power(std::int64_t t, std::int64_t p, unsigned e)
{
    Int prev = 1, cur = t;
    if (e == 0)
        return prev;
    for (unsigned i = 1; i < e; ++i) {
        Int next = Int(t) * cur - Int(p) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// a_{p^{k-2}} for even weight k >= 2.
inline Int a_coefficient(std::int64_t t, std::int64_t p, unsigned k)
{
    if (k < 2 || k % 2 != 0)
        fail(ErrorCode::InvalidArgument, "weight must be even and >= 2");
    return a_power(t, p, k - 2);
}

/// E(F_p)[3] = Z/3 x Z/3, decided by whether a1^3 - 27 a3 is a cube.
inline bool has_full_three_torsion(const Curve& c, std::int64_t p)
{
    if (p % 3 != 1)
        fail(ErrorCode::WrongResidue, "full rational 3-torsion test needs p = 1 mod 3");
    if (!c.good_at(p))
        fail(ErrorCode::BadReduction, "curve has bad reduction at " + std::to_string(p));
    const Field& f = *cached_field(p, 1);
    const std::int64_t a1 = mod(c.a1, p);
    return f.is_cube(f.from_int(a1 * a1 % p * a1 - 27 * mod(c.a3, p)));
}

/// 2F1(rho, rho^2; eps | x) over F_{p^m} for x in F_p, read off from the
/// trace of E_{1, x/27}: the value is -t_{p^m}/p^m.
inline Rational hypergeom_via_trace(std::int64_t p, std::int64_t x, unsigned m)
{
    x = mod(x, p);
    if (x == 0)
        return Rational(0);
    if (x == 1)
        fail(ErrorCode::BadReduction, "argument 1 corresponds to a singular curve");
    const std::int64_t a3 = x * inv_mod(27, p) % p;
    const std::int64_t t = frobenius_trace(Curve{1, a3}, p);
    return Rational(-lift_trace(t, p, m), int_pow(p, m));
}

// ---------------------------------------------------------------------------
// Short Weierstrass models and the census.

struct ShortModel {
    std::int64_t A = 0;
    std::int64_t B = 0;
};

/// y^2 = x^3 - 27 c4 x - 54 c6, isomorphic to the E_{a1,a3} model for p > 3.
inline ShortModel short_model(const Curve& c, std::int64_t p)
{
    const std::int64_t a1 = mod(c.a1, p), a3 = mod(c.a3, p);
    const std::int64_t b2 = a1 * a1 % p, b4 = a1 * a3 % p, b6 = a3 * a3 % p;
    const std::int64_t c4 = mod(b2 * b2 - 24 * b4, p);
    const std::int64_t c6 = mod(-(b2 * b2 % p * b2) + 36 * b2 % p * b4 - 216 * b6, p);
    return {mod(-27 * c4, p), mod(-54 * c6, p)};
}

/// 1728 * 4A^3 / (4A^3 + 27B^2) in F_p.
inline std::int64_t j_invariant(const ShortModel& m, std::int64_t p)
{
    const std::int64_t a3 = 4 * (m.A * m.A % p * m.A % p) % p;
    const std::int64_t den = mod(a3 + 27 * (m.B * m.B % p), p);
    if (den == 0)
        fail(ErrorCode::BadReduction, "singular short model");
    return 1728 % p * a3 % p * inv_mod(den, p) % p;
}

inline std::int64_t j_invariant(const Curve& c, std::int64_t p) { return j_invariant(short_model(c, p), p); }

/// t(t - 24)^3 / (t - 27), the j-invariant of the family member E_t.
inline std::int64_t j_of_family(std::int64_t t, std::int64_t p)
{
    t = mod(t, p);
    const std::int64_t u = mod(t - 24, p);
    return t * (u * u % p * u % p) % p * inv_mod(mod(t - 27, p), p) % p;
}

enum class TorsionKind {
    None,          // no rational 3-torsion point
    Cyclic,        // Z/3, j != 0
    CyclicJ0,      // Z/3, j = 0
    Full,          // Z/3 x Z/3, j != 0, 1728
    Full1728,      // Z/3 x Z/3, j = 1728
    FullJ0,        // Z/3 x Z/3, j = 0
};

inline const char* to_string(TorsionKind k)
{
    switch (k) {
    case TorsionKind::None: return "none";
    case TorsionKind::Cyclic: return "Z3";
    case TorsionKind::CyclicJ0: return "Z3,j=0";
    case TorsionKind::Full: return "Z3xZ3";
    case TorsionKind::Full1728: return "Z3xZ3,j=1728";
    case TorsionKind::FullJ0: return "Z3xZ3,j=0";
    }
    return "?";
}

struct CensusClass {
    ShortModel rep;          // smallest (A, B) in the orbit
    std::int64_t trace = 0;
    std::int64_t j = 0;
    int three_torsion = 1;   // number of points P with 3P = O
    TorsionKind kind = TorsionKind::None;
};

struct CensusRow {
    std::int64_t s = 0;
    std::int64_t N = 0;
    std::int64_t N3 = 0;
    std::int64_t N3x3 = 0;
};

struct Census {
    std::int64_t p = 0;
    std::vector<CensusClass> classes;
    std::vector<CensusRow> rows;             // sorted by s, every |s| <= 2 sqrt(p)
    std::vector<std::uint32_t> class_of;     // index A * p + B, npos when singular

    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    std::uint32_t find(const ShortModel& m) const
    {
        return class_of[static_cast<std::size_t>(mod(m.A, p) * p + mod(m.B, p))];
    }

    const CensusRow* row(std::int64_t s) const
    {
        for (const auto& r : rows)
            if (r.s == s)
                return &r;
        return nullptr;
    }
};

namespace detail {

inline int count_three_torsion(const Field& f, std::int64_t A, std::int64_t B)
{
    const std::int64_t p = f.p();
    int n = 1;
    for (std::int64_t x = 0; x < p; ++x) {
        // 3x^4 + 6A x^2 + 12B x - A^2
        const std::int64_t x2 = x * x % p;
        const std::int64_t psi = mod(3 * (x2 * x2 % p) + 6 * A % p * x2 + 12 * B % p * x - A * A, p);
        if (psi != 0)
            continue;
        const std::int64_t rhs = (x2 * x + A * x + B) % p;
        n += 1 + f.quadratic_character(static_cast<Elem>(rhs));
    }
    return n;
}

inline TorsionKind classify(int three_torsion, std::int64_t j, std::int64_t p)
{
    if (three_torsion < 3)
        return TorsionKind::None;
    if (three_torsion == 3)
        return j == 0 ? TorsionKind::CyclicJ0 : TorsionKind::Cyclic;
    if (j == 0)
        return TorsionKind::FullJ0;
    if (j == 1728 % p)
        return TorsionKind::Full1728;
    return TorsionKind::Full;
}

} // namespace detail

/// Every F_p-isomorphism class of elliptic curves, bucketed by trace.
inline Census build_census(std::int64_t p)
{
    if (!is_prime(p) || p <= 3)
        fail(ErrorCode::InvalidArgument, "census needs a prime p > 3");
    const Field& f = *cached_field(p, 1);
    Census c;
    c.p = p;
    c.class_of.assign(static_cast<std::size_t>(p * p), Census::npos);

    std::vector<std::int64_t> u4(static_cast<std::size_t>(p)), u6(static_cast<std::size_t>(p));
    for (std::int64_t u = 1; u < p; ++u) {
        const std::int64_t u2 = u * u % p;
        u4[u] = u2 * u2 % p;
        u6[u] = u4[u] * u2 % p;
    }

    for (std::int64_t A = 0; A < p; ++A) {
        for (std::int64_t B = 0; B < p; ++B) {
            const std::size_t idx = static_cast<std::size_t>(A * p + B);
            if (c.class_of[idx] != Census::npos)
                continue;
            if (mod(4 * (A * A % p * A % p) + 27 * (B * B % p), p) == 0)
                continue;
            const auto id = static_cast<std::uint32_t>(c.classes.size());
            for (std::int64_t u = 1; u < p; ++u)
                c.class_of[static_cast<std::size_t>(u4[u] * A % p * p + u6[u] * B % p)] = id;

            CensusClass cls;
            cls.rep = {A, B};
            std::int64_t chi = 0;
            for (std::int64_t x = 0; x < p; ++x)
                chi += f.quadratic_character(static_cast<Elem>((x * x % p * x + A * x + B) % p));
            cls.trace = -chi;
            cls.j = j_invariant(cls.rep, p);
            cls.three_torsion = detail::count_three_torsion(f, A, B);
            cls.kind = detail::classify(cls.three_torsion, cls.j, p);
            c.classes.push_back(cls);
        }
    }

    std::map<std::int64_t, CensusRow> rows;
    const std::int64_t bound = isqrt(4 * p);
    for (std::int64_t s = -bound; s <= bound; ++s)
        rows[s] = CensusRow{s, 0, 0, 0};
    for (const auto& cls : c.classes) {
        auto& r = rows[cls.trace];
        ++r.N;
        if (cls.three_torsion >= 3)
            ++r.N3;
        if (cls.three_torsion == 9)
            ++r.N3x3;
    }
    for (auto& [s, r] : rows)
        c.rows.push_back(r);
    return c;
}

struct FiberEntry {
    std::uint32_t class_index = 0;
    CensusClass cls;
    std::int64_t fiber = 0; // number of t with E_t in this class
};

/// For each class of trace s with a rational 3-torsion point, how many
/// t in F_p (with E_t nonsingular) give a curve in that class.
inline std::vector<FiberEntry> fiber_profile(const Census& census, std::int64_t s)
{
    const std::int64_t p = census.p;
    std::map<std::uint32_t, std::int64_t> hits;
    for (std::int64_t t = 1; t < p; ++t) {
        const Curve e = Curve::family(t);
        if (!e.good_at(p))
            continue;
        const std::uint32_t id = census.find(short_model(e, p));
        if (id == Census::npos)
            fail(ErrorCode::Inconsistency, "nonsingular family member maps to no class");
        if (census.classes[id].trace == s)
            ++hits[id];
    }
    std::vector<FiberEntry> out;
    for (std::uint32_t id = 0; id < census.classes.size(); ++id) {
        const auto& cls = census.classes[id];
        if (cls.trace != s || cls.three_torsion < 3)
            continue;
        auto it = hits.find(id);
        out.push_back({id, cls, it == hits.end() ? 0 : it->second});
    }
    for (const auto& [id, n] : hits)
        if (census.classes[id].three_torsion < 3)
            fail(ErrorCode::Inconsistency, "family member without 3-torsion");
    return out;
}

inline std::vector<FiberEntry> fiber_profile(std::int64_t p, std::int64_t s)
{
    return fiber_profile(build_census(p), s);
}

/// Traces of y^2 + y = x^3, y^2 + b y = x^3, y^2 + b^2 y = x^3 for b the
/// smallest noncube.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> cubic_twist_traces(std::int64_t p)
{
    if (p % 3 != 1)
        fail(ErrorCode::WrongResidue, "cubic twists are distinct only for p = 1 mod 3");
    const Field& f = *cached_field(p, 1);
    const std::int64_t b = find_noncube(f);
    return {frobenius_trace(f, Curve{0, 1}), frobenius_trace(f, Curve{0, b}),
            frobenius_trace(f, Curve{0, b * b % p})};
}

} // namespace hh
