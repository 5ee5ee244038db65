#pragma once

// Elements a + b*w of Z[w] (or Q(w)), w = exp(2 pi i / 3), w^2 = -1 - w.

#include <complex>
#include <cstdint>
#include <string>

#include "hh/numeric.hpp"

namespace hh {

template <class T>
struct Eisenstein {
    T a{};
    T b{};

    Eisenstein() = default;
    Eisenstein(T a_, T b_ = T(0)) : a(std::move(a_)), b(std::move(b_)) {}

    static Eisenstein omega() { return {T(0), T(1)}; }

    /// w^k for any integer k.
    static Eisenstein omega_pow(std::int64_t k)
    {
        switch (mod(k, 3)) {
        case 0: return {T(1), T(0)};
        case 1: return {T(0), T(1)};
        default: return {T(-1), T(-1)};
        }
    }

    /// zeta_6^k with zeta_6 = 1 + w = -w^2.
    static Eisenstein zeta6_pow(std::int64_t k)
    {
        // zeta_6^k = (-1)^k w^(2k)
        Eisenstein r = omega_pow(2 * k);
        return (mod(k, 2) == 0) ? r : -r;
    }

    Eisenstein operator-() const { return {-a, -b}; }
    Eisenstein& operator+=(const Eisenstein& o)
    {
        a += o.a;
        b += o.b;
        return *this;
    }
    Eisenstein& operator-=(const Eisenstein& o)
    {
        a -= o.a;
        b -= o.b;
        return *this;
    }
    Eisenstein& operator*=(const Eisenstein& o)
    {
        // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
        T bd = b * o.b;
        T na = a * o.a - bd;
        T nb = a * o.b + b * o.a - bd;
        a = std::move(na);
        b = std::move(nb);
        return *this;
    }
    Eisenstein& operator*=(const T& s)
    {
        a *= s;
        b *= s;
        return *this;
    }

    friend Eisenstein operator+(Eisenstein x, const Eisenstein& y) { return x += y; }
    friend Eisenstein operator-(Eisenstein x, const Eisenstein& y) { return x -= y; }
    friend Eisenstein operator*(Eisenstein x, const Eisenstein& y) { return x *= y; }
    friend Eisenstein operator*(Eisenstein x, const T& s) { return x *= s; }
    friend Eisenstein operator*(const T& s, Eisenstein x) { return x *= s; }
    friend bool operator==(const Eisenstein& x, const Eisenstein& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Eisenstein& x, const Eisenstein& y) { return !(x == y); }

    /// Complex conjugate: w -> w^2 = -1 - w.
    Eisenstein conj() const { return {a - b, -b}; }

    /// a^2 - ab + b^2.
    T norm() const { return a * a - a * b + b * b; }

    bool is_rational() const { return b == T(0); }

    Eisenstein pow(unsigned n) const
    {
        Eisenstein r(T(1), T(0)), base = *this;
        while (n != 0) {
            if (n & 1U)
                r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    std::complex<double> to_complex() const
    {
        const double ad = static_cast<double>(a);
        const double bd = static_cast<double>(b);
        return {ad - 0.5 * bd, bd * 0.8660254037844386};
    }

    std::string str() const
    {
        std::string sa, sb;
        if constexpr (std::is_same_v<T, Rational>) {
            sa = to_exact_string(a);
            sb = to_exact_string(b);
        } else {
            sa = std::to_string(a);
            sb = std::to_string(b);
        }
        return sa + " + (" + sb + ")w";
    }
};

using EisInt = Eisenstein<Int>;
using EisRat = Eisenstein<Rational>;

template <>
inline std::string Eisenstein<Int>::str() const
{
    return a.str() + " + (" + b.str() + ")w";
}

inline EisRat to_rational(const EisInt& z) { return {Rational(z.a), Rational(z.b)}; }

} // namespace hh
