#pragma once

// Finite fields F_q, q = p^e, realized with full discrete-log tables.
//
// Elements are encoded as integers in [0, q): the coefficient of X^i of the
// polynomial representative is the i-th base-p digit. Prime-field elements
// are therefore their own canonical residues.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hh/error.hpp"
#include "hh/numeric.hpp"

namespace hh {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldBound = 2'000'000;
inline constexpr std::uint8_t kNoCubeClass = 0xFF;

/// Field-size limit; HH_FIELD_BOUND overrides the built-in default.
inline std::uint64_t default_field_bound()
{
    if (const char* env = std::getenv("HH_FIELD_BOUND")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return v;
    }
    return kDefaultFieldBound;
}

namespace detail {

// Dense polynomials over F_p, coefficient i is the X^i coefficient.
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline Poly poly_rem(Poly a, const Poly& m, std::int64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::int64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::int64_t coef = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = mod(a[shift + i] - coef * m[i], p);
        trim(a);
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_rem(std::move(r), m, p);
}

inline Poly decode(std::uint64_t code, std::int64_t p, unsigned e)
{
    Poly a(e, 0);
    for (unsigned i = 0; i < e; ++i) {
        a[i] = static_cast<std::int64_t>(code % p);
        code /= p;
    }
    trim(a);
    return a;
}

inline std::uint64_t encode(const Poly& a, std::int64_t p)
{
    std::uint64_t code = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        code = code * p + static_cast<std::uint64_t>(a[i]);
    return code;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& m, std::int64_t p)
{
    const unsigned deg = static_cast<unsigned>(m.size() - 1);
    for (unsigned d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly f = decode(code, p, d);
            f.resize(d + 1, 0);
            f[d] = 1;
            if (poly_rem(m, f, p).empty())
                return false;
        }
    }
    return true;
}

} // namespace detail

/// A realized finite field. Immutable after construction and safe to share
/// across threads.
class Field {
public:
    static std::shared_ptr<const Field> build(std::int64_t p, unsigned e,
                                              std::uint64_t bound = default_field_bound())
    {
        if (!is_prime(p))
            fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        if (p <= 3)
            fail(ErrorCode::InvalidArgument, "fields of characteristic 2 or 3 are not supported");
        if (e < 1)
            fail(ErrorCode::InvalidArgument, "extension degree must be >= 1");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > bound)
                fail(ErrorCode::FieldTooLarge, std::to_string(p) + "^" + std::to_string(e) +
                                                   " exceeds field bound " + std::to_string(bound));
        }
        return std::shared_ptr<const Field>(new Field(p, e, q));
    }

    std::int64_t p() const noexcept { return p_; }
    unsigned e() const noexcept { return e_; }
    std::uint64_t q() const noexcept { return q_; }
    std::uint64_t order() const noexcept { return q_ - 1; }

    /// Monic modulus, coefficient i of X^i (size e + 1).
    const std::vector<std::int64_t>& modulus() const noexcept { return modulus_; }
    Elem generator() const noexcept { return generator_; }

    Elem from_int(std::int64_t n) const { return static_cast<Elem>(mod(n, p_)); }

    Elem add(Elem a, Elem b) const
    {
        if (e_ == 1) {
            Elem s = a + b;
            return s >= p_ ? s - static_cast<Elem>(p_) : s;
        }
        Elem r = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i) {
            Elem da = a % p_, db = b % p_;
            a /= p_;
            b /= p_;
            r += static_cast<Elem>((da + db) % p_) * scale;
            scale *= static_cast<Elem>(p_);
        }
        return r;
    }

    Elem neg(Elem a) const
    {
        if (e_ == 1)
            return a == 0 ? 0 : static_cast<Elem>(p_) - a;
        Elem r = 0, scale = 1;
        for (unsigned i = 0; i < e_; ++i) {
            Elem da = a % p_;
            a /= p_;
            r += (da == 0 ? 0 : static_cast<Elem>(p_) - da) * scale;
            scale *= static_cast<Elem>(p_);
        }
        return r;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0)
            return 0;
        std::uint64_t k = static_cast<std::uint64_t>(log_[a]) + log_[b];
        if (k >= order())
            k -= order();
        return exp_[k];
    }

    Elem inv(Elem a) const
    {
        if (a == 0)
            fail(ErrorCode::InvalidArgument, "inverse of zero");
        return exp_[log_[a] == 0 ? 0 : order() - log_[a]];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::int64_t n) const
    {
        if (a == 0)
            return n == 0 ? 1 : 0;
        std::int64_t k = mod(static_cast<std::int64_t>(log_[a]) * (n % static_cast<std::int64_t>(order())),
                             static_cast<std::int64_t>(order()));
        return exp_[k];
    }

    /// Discrete log base the generator; x must be nonzero.
    std::uint32_t log(Elem x) const
    {
        if (x == 0)
            fail(ErrorCode::InvalidArgument, "log of zero");
        return log_[x];
    }

    Elem exp(std::uint64_t k) const { return exp_[k % order()]; }

    /// 0, 1, 2 for the coset of x modulo cubes (all 0 when q = 2 mod 3), kNoCubeClass for 0.
    std::uint8_t cube_class(Elem x) const noexcept { return cube_[x]; }
    bool is_cube(Elem x) const noexcept { return x == 0 || cube_[x] == 0; }
    bool q_is_1_mod_3() const noexcept { return q_ % 3 == 1; }

    /// Quadratic character (Legendre symbol for e = 1).
    int quadratic_character(Elem x) const noexcept
    {
        if (x == 0)
            return 0;
        return (log_[x] & 1U) == 0 ? 1 : -1;
    }

    Elem one_minus(Elem x) const noexcept { return one_minus_[x]; }

    Elem frobenius(Elem x) const { return pow(x, p_); }

    /// x + x^p + ... + x^(p^(e-1)), an element of the prime field.
    Elem trace_to_prime(Elem x) const
    {
        if (e_ == 1 || x == 0)
            return x;
        Elem acc = 0, cur = x;
        for (unsigned i = 0; i < e_; ++i) {
            acc = add(acc, cur);
            cur = frobenius(cur);
        }
        return acc;
    }

    bool in_prime_field(Elem x) const noexcept { return x < static_cast<std::uint64_t>(p_); }

private:
    Field(std::int64_t p, unsigned e, std::uint64_t q) : p_(p), e_(e), q_(q)
    {
        if (e_ == 1)
            build_prime();
        else
            build_extension();
        build_derived();
    }

    void build_prime()
    {
        modulus_ = {0, 1};
        const auto factors = prime_divisors(p_ - 1);
        std::int64_t g = 2;
        for (;; ++g) {
            bool primitive = true;
            for (auto r : factors)
                if (pow_mod(g, (p_ - 1) / r, p_) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive)
                break;
        }
        generator_ = static_cast<Elem>(g);
        exp_.resize(order());
        log_.assign(q_, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t k = 0; k < order(); ++k) {
            exp_[k] = static_cast<Elem>(cur);
            log_[cur] = static_cast<std::uint32_t>(k);
            cur = cur * g % p_;
        }
    }

    void build_extension()
    {
        using detail::Poly;
        std::uint64_t tail_count = q_;
        bool found = false;
        for (std::uint64_t code = 0; code < tail_count; ++code) {
            Poly m = detail::decode(code, p_, e_);
            m.resize(e_ + 1, 0);
            m[e_] = 1;
            if (detail::is_irreducible(m, p_)) {
                modulus_ = m;
                found = true;
                break;
            }
        }
        if (!found)
            fail(ErrorCode::NoIrreducibleFound, "no irreducible polynomial of degree " + std::to_string(e_));

        auto mulmod = [&](std::uint64_t a, std::uint64_t b) {
            return detail::encode(detail::poly_mulmod(detail::decode(a, p_, e_), detail::decode(b, p_, e_),
                                                      modulus_, p_),
                                  p_);
        };
        auto powmod = [&](std::uint64_t a, std::uint64_t n) {
            std::uint64_t result = 1;
            while (n != 0) {
                if (n & 1)
                    result = mulmod(result, a);
                a = mulmod(a, a);
                n >>= 1;
            }
            return result;
        };

        const auto factors = prime_divisors(static_cast<std::int64_t>(order()));
        std::uint64_t g = 2;
        for (; g < q_; ++g) {
            bool primitive = true;
            for (auto r : factors)
                if (powmod(g, order() / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive)
                break;
        }
        generator_ = static_cast<Elem>(g);

        exp_.resize(order());
        log_.assign(q_, 0);
        // Multiplying by g is linear over F_p; precompute g * X^i to avoid full products.
        std::vector<detail::Poly> g_times_basis(e_);
        for (unsigned i = 0; i < e_; ++i) {
            detail::Poly xi(i + 1, 0);
            xi[i] = 1;
            g_times_basis[i] = detail::poly_mulmod(xi, detail::decode(g, p_, e_), modulus_, p_);
            g_times_basis[i].resize(e_, 0);
        }
        std::vector<std::int64_t> cur(e_, 0), next(e_);
        cur[0] = 1;
        for (std::uint64_t k = 0; k < order(); ++k) {
            std::uint64_t code = 0;
            for (unsigned i = e_; i-- > 0;)
                code = code * p_ + static_cast<std::uint64_t>(cur[i]);
            exp_[k] = static_cast<Elem>(code);
            log_[code] = static_cast<std::uint32_t>(k);
            std::fill(next.begin(), next.end(), 0);
            for (unsigned i = 0; i < e_; ++i) {
                if (cur[i] == 0)
                    continue;
                for (unsigned j = 0; j < e_; ++j)
                    next[j] = (next[j] + cur[i] * g_times_basis[i][j]) % p_;
            }
            cur.swap(next);
        }
    }

    void build_derived()
    {
        cube_.assign(q_, 0);
        cube_[0] = kNoCubeClass;
        if (q_is_1_mod_3())
            for (std::uint64_t x = 1; x < q_; ++x)
                cube_[x] = static_cast<std::uint8_t>(log_[x] % 3);
        one_minus_.resize(q_);
        for (std::uint64_t x = 0; x < q_; ++x)
            one_minus_[x] = sub(1, static_cast<Elem>(x));
    }

    std::int64_t p_;
    unsigned e_;
    std::uint64_t q_;
    std::vector<std::int64_t> modulus_;
    Elem generator_ = 1;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint8_t> cube_;
    std::vector<Elem> one_minus_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr build_field(std::int64_t p, unsigned e, std::uint64_t bound = default_field_bound())
{
    return Field::build(p, e, bound);
}

/// Process-wide cache so sweeps share one table set per (p, e).
inline FieldPtr cached_field(std::int64_t p, unsigned e, std::uint64_t bound = default_field_bound())
{
    static std::mutex mutex;
    static std::map<std::pair<std::int64_t, unsigned>, FieldPtr> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({p, e});
        if (it != cache.end()) {
            if (it->second->q() > bound)
                fail(ErrorCode::FieldTooLarge, "cached field exceeds requested bound");
            return it->second;
        }
    }
    FieldPtr f = Field::build(p, e, bound);
    std::lock_guard lock(mutex);
    return cache.emplace(std::make_pair(p, e), f).first->second;
}

/// Smallest (by encoding) element that is not a cube.
inline Elem find_noncube(const Field& f)
{
    if (!f.q_is_1_mod_3())
        fail(ErrorCode::AllCubes, "every element of F_" + std::to_string(f.q()) + " is a cube");
    for (std::uint64_t x = 1; x < f.q(); ++x)
        if (f.cube_class(static_cast<Elem>(x)) != 0)
            return static_cast<Elem>(x);
    fail(ErrorCode::Inconsistency, "no noncube found although q = 1 mod 3");
}

} // namespace hh
