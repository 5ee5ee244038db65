#pragma once

// Gaussian hypergeometric series over F_q: the general character sum and
// the single-sum fast path for 2F1(rho, rho^2; eps | x).

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hh/charsum.hpp"

namespace hh {

inline constexpr std::uint64_t kGeneralHypergeomBound = 2000;

struct HypergeomSpec {
    std::vector<Character> top;    // A_0 .. A_n
    std::vector<Character> bottom; // B_1 .. B_n

    static HypergeomSpec rho_2f1(const CharacterContext& c)
    {
        const Character r = Character::rho(c);
        return {{r, r * r}, {Character::trivial()}};
    }
};

struct HypergeomValue {
    CharValue value;
    std::optional<Rational> rational;
};

/// The series with its character-indexed coefficients precomputed, so each
/// argument costs O(q) with no locking.
class HypergeomSeries {
public:
    HypergeomSeries(const BinomialTable& table, HypergeomSpec spec, std::uint64_t max_q = kGeneralHypergeomBound)
        : ctx_(&table.context()), spec_(std::move(spec))
    {
        if (spec_.top.size() != spec_.bottom.size() + 1 || spec_.top.empty())
            fail(ErrorCode::InvalidArgument, "a series needs exactly one more top character than bottom");
        if (ctx_->q() > max_q)
            fail(ErrorCode::FieldTooLarge, "general series evaluation limited to q <= " + std::to_string(max_q));
        const Rational scale(static_cast<long long>(ctx_->q()), static_cast<long long>(ctx_->n()));
        coeffs_.reserve(static_cast<std::size_t>(ctx_->n()));
        for (std::int64_t m = 0; m < ctx_->n(); ++m) {
            const Character chi{m};
            CharValue term = table.get(spec_.top[0] * chi, chi);
            for (std::size_t i = 0; i < spec_.bottom.size(); ++i)
                term *= table.get(spec_.top[i + 1] * chi, spec_.bottom[i] * chi);
            coeffs_.push_back(term * scale);
        }
    }

    const HypergeomSpec& spec() const noexcept { return spec_; }

    HypergeomValue operator()(Elem x) const
    {
        HypergeomValue out{CharValue::from_rational(0), std::nullopt};
        if (x == 0) {
            out.rational = Rational(0);
            return out;
        }
        Complex s = 0.0;
        for (std::int64_t m = 0; m < ctx_->n(); ++m)
            s += coeffs_[static_cast<std::size_t>(m)].approx() * ctx_->eval(m, x);
        out.value = CharValue(s);
        try {
            out.rational = recognize_rational(out.value, ctx_->q(), static_cast<unsigned>(spec_.top.size()));
        } catch (const Error&) {
            out.rational.reset();
        }
        return out;
    }

private:
    const CharacterContext* ctx_;
    HypergeomSpec spec_;
    std::vector<CharValue> coeffs_;
};

/// (q/(q-1)) sum_chi bin(A_0 chi, chi) prod bin(A_i chi, B_i chi) chi(x).
inline HypergeomValue evaluate_general(const BinomialTable& table, const HypergeomSpec& spec, Elem x,
                                       std::uint64_t max_q = kGeneralHypergeomBound)
{
    return HypergeomSeries(table, spec, max_q)(x);
}

/// (1/q) sum_y rho(y) rho^2(1-y) rho(1-xy), exact; 0 at x = 0.
inline Rational fast_2f1_rho(const Field& f, Elem x)
{
    if (!f.q_is_1_mod_3())
        fail(ErrorCode::WrongResidue, "rho exists only when q = 1 mod 3");
    if (x == 0)
        return Rational(0);
    std::int64_t bins[3] = {0, 0, 0};
    for (std::uint64_t yy = 2; yy < f.q(); ++yy) {
        const auto y = static_cast<Elem>(yy);
        const Elem w = f.one_minus(f.mul(x, y));
        if (w == 0)
            continue;
        const unsigned k = f.cube_class(y) + 2U * f.cube_class(f.one_minus(y)) + f.cube_class(w);
        ++bins[k % 3];
    }
    if (bins[1] != bins[2])
        fail(ErrorCode::NotRational, "single-sum value has a nonzero w-component");
    return Rational(bins[0] - bins[1], static_cast<long long>(f.q()));
}

/// Table of fast_2f1_rho over all of F_q.
inline std::vector<Rational> fast_2f1_rho_table(const Field& f)
{
    std::vector<Rational> out(f.q());
    for (std::uint64_t x = 0; x < f.q(); ++x)
        out[x] = fast_2f1_rho(f, static_cast<Elem>(x));
    return out;
}

} // namespace hh
