#pragma once

// Multiplicative characters T^m of F_q^*, the additive character theta,
// Gauss sums, normalized Jacobi sums and a set of executable identities.

#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "hh/eisenstein.hpp"
#include "hh/field.hpp"
#include "hh/numeric.hpp"

namespace hh {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Value that is exact in Q(w) when possible, with a complex mirror always kept.
class CharValue {
public:
    CharValue() : exact_(EisRat{}), approx_(0.0) {}
    explicit CharValue(Complex z) : approx_(z) {}
    explicit CharValue(EisRat z) : exact_(z), approx_(z.to_complex()) {}
    static CharValue from_rational(const Rational& r) { return CharValue(EisRat(r, Rational(0))); }

    bool is_exact() const noexcept { return exact_.has_value(); }
    const EisRat& exact() const { return *exact_; }
    Complex approx() const noexcept { return approx_; }

    CharValue& operator+=(const CharValue& o)
    {
        if (is_exact() && o.is_exact())
            *exact_ += *o.exact_;
        else
            exact_.reset();
        approx_ += o.approx_;
        return *this;
    }
    CharValue& operator-=(const CharValue& o)
    {
        if (is_exact() && o.is_exact())
            *exact_ -= *o.exact_;
        else
            exact_.reset();
        approx_ -= o.approx_;
        return *this;
    }
    CharValue& operator*=(const CharValue& o)
    {
        if (is_exact() && o.is_exact())
            *exact_ *= *o.exact_;
        else
            exact_.reset();
        approx_ *= o.approx_;
        return *this;
    }
    CharValue& operator*=(const Rational& s)
    {
        if (is_exact())
            *exact_ *= s;
        approx_ *= static_cast<double>(s);
        return *this;
    }
    friend CharValue operator+(CharValue a, const CharValue& b) { return a += b; }
    friend CharValue operator-(CharValue a, const CharValue& b) { return a -= b; }
    friend CharValue operator*(CharValue a, const CharValue& b) { return a *= b; }
    friend CharValue operator*(CharValue a, const Rational& s) { return a *= s; }
    friend CharValue operator*(const Rational& s, CharValue a) { return a *= s; }

private:
    std::optional<EisRat> exact_;
    Complex approx_;
};

/// Equality: exact when both sides are exact, otherwise |a - b| <= tol.
inline bool same_value(const CharValue& a, const CharValue& b, double tol = 1e-5)
{
    if (a.is_exact() && b.is_exact())
        return a.exact() == b.exact();
    return std::abs(a.approx() - b.approx()) <= tol;
}

/// Reads a value as a rational with denominator dividing q^power; throws NotRational.
inline Rational recognize_rational(const CharValue& v, std::uint64_t q, unsigned power = 2)
{
    if (v.is_exact()) {
        if (!v.exact().is_rational())
            fail(ErrorCode::NotRational, "exact value " + v.exact().str() + " is not rational");
        return v.exact().a;
    }
    const Complex z = v.approx();
    long double scale = 1;
    for (unsigned i = 0; i < power; ++i)
        scale *= static_cast<long double>(q);
    const long double scaled = static_cast<long double>(z.real()) * scale;
    const long double nearest = std::round(scaled);
    if (std::abs(z.imag()) >= 1e-5 || std::abs(scaled - nearest) >= 1e-3 ||
        std::abs(static_cast<long double>(z.real()) - nearest / scale) >= 1e-5)
        fail(ErrorCode::NotRational, "value (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                         ") is not a rational with denominator dividing q^" + std::to_string(power));
    return Rational(Int(static_cast<long long>(nearest)), int_pow(Int(q), power));
}

/// Root-of-unity tables shared by every character of one field.
class CharacterContext {
public:
    explicit CharacterContext(FieldPtr f) : field_(std::move(f))
    {
        const std::uint64_t n = field_->order();
        zeta_.resize(n);
        for (std::uint64_t k = 0; k < n; ++k)
            zeta_[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
        const auto p = static_cast<std::uint64_t>(field_->p());
        zeta_p_.resize(p);
        for (std::uint64_t k = 0; k < p; ++k)
            zeta_p_[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(p));
        theta_.resize(field_->q());
        for (std::uint64_t x = 0; x < field_->q(); ++x)
            theta_[x] = zeta_p_[field_->trace_to_prime(static_cast<Elem>(x))];
    }

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    std::uint64_t q() const noexcept { return field_->q(); }
    std::int64_t n() const noexcept { return static_cast<std::int64_t>(field_->order()); }

    std::int64_t reduce(std::int64_t m) const { return mod(m, n()); }

    /// Order of T^m.
    std::int64_t order_of(std::int64_t m) const { return n() / std::gcd(reduce(m), n()); }
    bool order_divides_6(std::int64_t m) const { return 6 % order_of(m) == 0; }

    /// T^m(x) as a complex number (0 at x = 0).
    Complex eval(std::int64_t m, Elem x) const
    {
        if (x == 0)
            return 0.0;
        const auto k = static_cast<std::uint64_t>(reduce(m)) * field_->log(x) % field_->order();
        return zeta_[k];
    }

    /// T^m(x) as a sixth root of unity; requires order_divides_6(m).
    EisInt eval_exact(std::int64_t m, Elem x) const
    {
        if (x == 0)
            return {};
        const std::int64_t step = 6 * reduce(m) / n(); // T^m(g) = zeta_6^step
        return EisInt::zeta6_pow(step * static_cast<std::int64_t>(field_->log(x)));
    }

    CharValue eval_value(std::int64_t m, Elem x) const
    {
        if (order_divides_6(m))
            return CharValue(to_rational(eval_exact(m, x)));
        return CharValue(eval(m, x));
    }

    /// theta(x) = zeta_p^{tr x}.
    Complex theta(Elem x) const noexcept { return theta_[x]; }

    /// T^m(-1) is +-1.
    int sign_at_minus_one(std::int64_t m) const
    {
        // log(-1) = n/2, so T^m(-1) = (-1)^m.
        return (reduce(m) % 2 == 0) ? 1 : -1;
    }

private:
    FieldPtr field_;
    std::vector<Complex> zeta_;
    std::vector<Complex> zeta_p_;
    std::vector<Complex> theta_;
};

using CharContextPtr = std::shared_ptr<const CharacterContext>;

inline CharContextPtr make_char_context(FieldPtr f) { return std::make_shared<const CharacterContext>(std::move(f)); }

/// The character T^m.
struct Character {
    std::int64_t m = 0;

    static Character trivial() { return {0}; }
    /// rho = T^{(q-1)/3}.
    static Character rho(const CharacterContext& c)
    {
        if (c.n() % 3 != 0)
            fail(ErrorCode::WrongResidue, "no character of order 3 when q = 2 mod 3");
        return {c.n() / 3};
    }
    static Character quadratic(const CharacterContext& c) { return {c.n() / 2}; }

    Character operator*(const Character& o) const { return {m + o.m}; }
    Character inverse() const { return {-m}; }
};

/// G(T^m) = sum_x T^m(x) theta(x). The trivial character gives exactly -1.
inline CharValue gauss_sum(const CharacterContext& c, Character chi)
{
    if (c.reduce(chi.m) == 0)
        return CharValue::from_rational(Rational(-1));
    Complex s = 0.0;
    for (std::uint64_t x = 1; x < c.q(); ++x)
        s += c.eval(chi.m, static_cast<Elem>(x)) * c.theta(static_cast<Elem>(x));
    return CharValue(s);
}

/// (B(-1)/q) sum_x A(x) conj(B)(1 - x).
inline CharValue normalized_binomial(const CharacterContext& c, Character A, Character B)
{
    const Field& f = c.field();
    const std::int64_t bm = -B.m;
    if (c.order_divides_6(A.m) && c.order_divides_6(B.m)) {
        EisInt s;
        for (std::uint64_t x = 2; x < c.q(); ++x) {
            const auto e = static_cast<Elem>(x);
            s += c.eval_exact(A.m, e) * c.eval_exact(bm, f.one_minus(e));
        }
        EisRat r = to_rational(s);
        r *= Rational(c.sign_at_minus_one(B.m), static_cast<long long>(c.q()));
        return CharValue(r);
    }
    Complex s = 0.0;
    for (std::uint64_t x = 2; x < c.q(); ++x) {
        const auto e = static_cast<Elem>(x);
        s += c.eval(A.m, e) * c.eval(bm, f.one_minus(e));
    }
    return CharValue(s * (static_cast<double>(c.sign_at_minus_one(B.m)) / static_cast<double>(c.q())));
}

/// Lazily filled, memoized table of bin(T^i, T^j); safe for concurrent readers.
class BinomialTable {
public:
    explicit BinomialTable(CharContextPtr c) : ctx_(std::move(c)) {}

    const CharacterContext& context() const noexcept { return *ctx_; }

    CharValue get(Character A, Character B) const
    {
        const std::uint64_t key =
            static_cast<std::uint64_t>(ctx_->reduce(A.m)) * static_cast<std::uint64_t>(ctx_->n()) +
            static_cast<std::uint64_t>(ctx_->reduce(B.m));
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end())
                return it->second;
        }
        CharValue v = normalized_binomial(*ctx_, A, B);
        std::lock_guard lock(mutex_);
        return cache_.emplace(key, v).first->second;
    }

private:
    CharContextPtr ctx_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::uint64_t, CharValue> cache_;
};

// ---------------------------------------------------------------------------
// Identities.

/// G_k G_{k+n/3} G_{k+2n/3} = q T^{-k}(27) G_{3k}.
inline bool davenport_hasse_check(const CharacterContext& c, std::int64_t k, double tol = 1e-5)
{
    if (c.n() % 3 != 0)
        fail(ErrorCode::WrongResidue, "Davenport-Hasse for cubes needs q = 1 mod 3");
    const std::int64_t r = c.n() / 3;
    CharValue lhs = gauss_sum(c, {k}) * gauss_sum(c, {k + r}) * gauss_sum(c, {k + 2 * r});
    CharValue rhs = gauss_sum(c, {3 * k}) * c.eval_value(-k, c.field().from_int(27)) *
                    Rational(static_cast<long long>(c.q()));
    return same_value(lhs, rhs, tol);
}

/// G_m G_{-m} = q T^m(-1) for m != 0.
inline bool gauss_reflection_check(const CharacterContext& c, std::int64_t m, double tol = 1e-5)
{
    if (c.reduce(m) == 0)
        fail(ErrorCode::DegenerateCharacter, "reflection needs a nontrivial character");
    CharValue lhs = gauss_sum(c, {m}) * gauss_sum(c, {-m});
    const Complex rhs = static_cast<double>(c.q()) * static_cast<double>(c.sign_at_minus_one(m));
    return std::abs(lhs.approx() - rhs) <= tol;
}

/// |G_m|^2 = q for m != 0.
inline bool gauss_norm_check(const CharacterContext& c, std::int64_t m, double tol = 1e-5)
{
    const double n2 = std::norm(gauss_sum(c, {m}).approx());
    return std::abs(n2 - static_cast<double>(c.q())) <= tol;
}

/// bin(T^m, T^n) = G_m G_{-n} T^n(-1) / (G_{m-n} q).
inline bool binomial_gauss_check(const CharacterContext& c, std::int64_t m, std::int64_t n, double tol = 1e-5)
{
    if (c.reduce(m - n) == 0)
        fail(ErrorCode::DegenerateCharacter, "m = n mod q-1");
    const Complex lhs = normalized_binomial(c, {m}, {n}).approx();
    const Complex rhs = gauss_sum(c, {m}).approx() * gauss_sum(c, {-n}).approx() *
                        static_cast<double>(c.sign_at_minus_one(n)) /
                        (gauss_sum(c, {m - n}).approx() * static_cast<double>(c.q()));
    return std::abs(lhs - rhs) <= tol;
}

/// bin(A,B)bin(C,A) = bin(C,B)bin(C/B,A/B) - (q-1)/q^2 B(-1) d(A) + (q-1)/q^2 AB(-1) d(B/C).
inline bool greene_product_check(const BinomialTable& t, Character A, Character B, Character C, double tol = 1e-5)
{
    const CharacterContext& c = t.context();
    const Rational coef(static_cast<long long>(c.q() - 1), static_cast<long long>(c.q() * c.q()));
    CharValue lhs = t.get(A, B) * t.get(C, A);
    CharValue rhs = t.get(C, B) * t.get(C * B.inverse(), A * B.inverse());
    if (c.reduce(A.m) == 0)
        rhs -= CharValue::from_rational(coef * c.sign_at_minus_one(B.m));
    if (c.reduce(B.m - C.m) == 0)
        rhs += CharValue::from_rational(coef * c.sign_at_minus_one(A.m + B.m));
    return same_value(lhs, rhs, tol);
}

inline bool greene_product_check(const CharacterContext& c, Character A, Character B, Character C, double tol = 1e-5)
{
    BinomialTable t(std::make_shared<const CharacterContext>(c));
    return greene_product_check(t, A, B, C, tol);
}

/// sum over x in F_q^* of T^m(x): q-1 for the trivial character, else 0.
inline bool orthogonality_check(const CharacterContext& c, std::int64_t m, double tol = 1e-6)
{
    Complex s = 0.0;
    for (std::uint64_t x = 1; x < c.q(); ++x)
        s += c.eval(m, static_cast<Elem>(x));
    const double expect = c.reduce(m) == 0 ? static_cast<double>(c.n()) : 0.0;
    return std::abs(s - expect) <= tol;
}

/// sum_z theta(z v) is q when v = 0 and 0 otherwise.
inline Complex theta_selector(const CharacterContext& c, Elem v)
{
    Complex s = 0.0;
    for (std::uint64_t z = 0; z < c.q(); ++z)
        s += c.theta(c.field().mul(static_cast<Elem>(z), v));
    return s;
}

/// Random two-variable polynomials over F_q evaluated at random points,
/// half of them forced to vanish; checks the selector at every sample.
inline bool theta_selector_check(const CharacterContext& c, std::uint64_t seed, int samples = 50, double tol = 1e-6)
{
    const Field& f = c.field();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, f.q() - 1);
    for (int i = 0; i < samples; ++i) {
        // P(x, y) = sum_{a+b<=2} c_ab x^a y^b
        Elem coef[3][3] = {};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; a + b < 3; ++b)
                coef[a][b] = static_cast<Elem>(pick(rng));
        const auto x = static_cast<Elem>(pick(rng));
        const auto y = static_cast<Elem>(pick(rng));
        auto evaluate = [&] {
            Elem v = 0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; a + b < 3; ++b)
                    v = f.add(v, f.mul(coef[a][b], f.mul(f.pow(x, a), f.pow(y, b))));
            return v;
        };
        if (i % 2 == 1)
            coef[0][0] = f.sub(coef[0][0], evaluate());
        const Elem v = evaluate();
        const Complex s = theta_selector(c, v);
        const double expect = v == 0 ? static_cast<double>(f.q()) : 0.0;
        if (std::abs(s - expect) > tol)
            return false;
    }
    return true;
}

} // namespace hh
