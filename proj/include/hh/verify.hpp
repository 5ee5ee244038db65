#pragma once

// Invariant sweeps shared by the command-line tool and the acceptance run.
// Every suite returns one line per case; a suite passes when all cases do.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hh/charsum.hpp"
#include "hh/class_number.hpp"
#include "hh/elliptic.hpp"
#include "hh/hecke.hpp"
#include "hh/hypergeometric.hpp"
#include "hh/modularity.hpp"
#include "hh/parallel.hpp"

namespace hh {

struct CaseResult {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    std::vector<CaseResult> cases;

    bool passed() const
    {
        for (const auto& c : cases)
            if (!c.pass)
                return false;
        return !cases.empty();
    }
    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : cases)
            n += c.pass ? 0 : 1;
        return n;
    }
};

struct VerifyConfig {
    std::int64_t pmax = 37;
    std::vector<std::uint64_t> fields; // prime powers q for the identity suite
    std::vector<unsigned> weights{4, 6, 8, 10};
    unsigned threads = 1;
    std::uint64_t seed = 1;
};

inline std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = std::max<std::int64_t>(lo, 2); p <= hi; ++p)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

namespace detail {

template <class T>
std::string show(const T& v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

inline std::string join_ints(const std::vector<Int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i].str();
    return s;
}

/// Runs fn per prime, catching library errors as failed cases.
template <class Fn>
std::vector<CaseResult> per_prime(const std::vector<std::int64_t>& primes, unsigned threads, Fn fn)
{
    auto nested = parallel_map(
        primes,
        [&](std::int64_t p) {
            try {
                return fn(p);
            } catch (const Error& e) {
                return std::vector<CaseResult>{{"p=" + std::to_string(p), false, e.what()}};
            }
        },
        threads);
    std::vector<CaseResult> out;
    for (auto& v : nested)
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

} // namespace detail

/// t_q(E_{a1,a3}) = -q 2F1(rho, rho^2; eps | 27 a3 / a1^3) for every nonsingular
/// (a1, a3) in F_p^2 with a1 != 0, every p^e = 1 mod 3, e in {1, 2}.
inline SuiteReport verify_frobenius_hypergeom(const VerifyConfig& cfg)
{
    SuiteReport r{"theorem1", {}};
    std::vector<std::pair<std::int64_t, unsigned>> jobs;
    for (std::int64_t p : primes_between(5, cfg.pmax))
        for (unsigned e = 1; e <= 2; ++e)
            if (int_pow(p, e) % 3 == 1)
                jobs.emplace_back(p, e);
    auto results = parallel_map(
        jobs,
        [](const std::pair<std::int64_t, unsigned>& job) {
            const auto [p, e] = job;
            const Field& f = *cached_field(p, e);
            std::vector<std::optional<Rational>> memo(static_cast<std::size_t>(p));
            std::int64_t cases = 0, bad = 0;
            std::string first_bad;
            for (std::int64_t a1 = 1; a1 < p; ++a1) {
                const std::int64_t inv_a1_cubed = inv_mod(a1 * a1 % p * a1 % p, p);
                for (std::int64_t a3 = 0; a3 < p; ++a3) {
                    const Curve c{a1, a3};
                    if (!c.good_at(p))
                        continue;
                    const std::int64_t x = 27 * a3 % p * inv_a1_cubed % p;
                    auto& slot = memo[static_cast<std::size_t>(x)];
                    if (!slot)
                        slot = fast_2f1_rho(f, f.from_int(x));
                    const std::int64_t t = frobenius_trace(f, c);
                    ++cases;
                    if (Rational(t) != -Rational(static_cast<long long>(f.q())) * *slot) {
                        ++bad;
                        if (first_bad.empty())
                            first_bad = "(a1, a3) = (" + std::to_string(a1) + ", " + std::to_string(a3) +
                                        "): t = " + std::to_string(t) + ", 2F1 = " + to_exact_string(*slot);
                    }
                }
            }
            return CaseResult{"p=" + std::to_string(p) + " e=" + std::to_string(e), bad == 0,
                              std::to_string(cases) + " curves" + (bad ? "; first mismatch " + first_bad : "")};
        },
        cfg.threads);
    r.cases = std::move(results);
    return r;
}

/// N(s) = H(s^2 - 4p); N_{3x3}(s) = H((s^2 - 4p)/9) exactly when p = 1 mod 3
/// and s = p + 1 mod 9, else 0; N_3(s) = N(s) iff s = p + 1 mod 3.
inline SuiteReport verify_schoof(const VerifyConfig& cfg)
{
    SuiteReport r{"schoof", {}};
    r.cases = detail::per_prime(primes_between(5, cfg.pmax), cfg.threads, [](std::int64_t p) {
        const Census census = build_census(p);
        std::int64_t bad = 0;
        std::string first;
        for (const auto& row : census.rows) {
            const std::int64_t s = row.s;
            if (s * s >= 4 * p)
                continue;
            const std::int64_t n = s * s - 4 * p;
            const Int H = to_int(hurwitz(n).H);
            Int H9 = 0;
            if (p % 3 == 1 && mod(s - (p + 1), 9) == 0)
                H9 = to_int(hurwitz_H(n / 9));
            const std::int64_t n3 = mod(s - (p + 1), 3) == 0 ? row.N : 0;
            const bool ok = Int(row.N) == H && Int(row.N3x3) == H9 && row.N3 == n3;
            if (!ok) {
                ++bad;
                if (first.empty())
                    first = "s=" + std::to_string(s) + ": N=" + std::to_string(row.N) + " H=" + H.str() +
                            " N3x3=" + std::to_string(row.N3x3) + " expected " + H9.str();
            }
        }
        return std::vector<CaseResult>{{"p=" + std::to_string(p), bad == 0,
                                        std::to_string(census.rows.size()) + " traces, " +
                                            std::to_string(census.classes.size()) + " classes" +
                                            (bad ? "; " + first : "")}};
    });
    return r;
}

/// All level-3 routes agree, and the level-9 routes agree (or collapse to
/// level 3 when p = 2 mod 3).
inline SuiteReport verify_traces(const VerifyConfig& cfg)
{
    SuiteReport r{"traces", {}};
    std::vector<std::int64_t> primes;
    for (std::int64_t p : primes_between(2, cfg.pmax))
        if (p != 3)
            primes.push_back(p);
    r.cases = detail::per_prime(primes, cfg.threads, [&](std::int64_t p) {
        std::vector<CaseResult> out;
        for (unsigned k : cfg.weights) {
            for (int level : {3, 9}) {
                const TraceReport rep = trace_report(level, k, p);
                bool ok = rep.agree();
                std::string detail = "[" + detail::join_ints(rep.present()) + "]";
                if (level == 9 && p % 3 == 2 && k >= 4) {
                    const Int t3 = trace_report(3, k, p).value();
                    ok = ok && rep.present().front() == t3;
                    detail += " level3=" + t3.str();
                }
                out.push_back({"level=" + std::to_string(level) + " k=" + std::to_string(k) + " p=" +
                                   std::to_string(p),
                               ok, detail});
            }
        }
        return out;
    });
    return r;
}

/// b(p) by the eta expansion, the Jacobi-sum formula, t^3 - 3pt, the level-9
/// trace and the threefold count.
inline SuiteReport verify_eta(const VerifyConfig& cfg)
{
    SuiteReport r{"eta", {}};
    const EtaProduct eta = eta3z8(std::max<std::int64_t>(cfg.pmax, 2));
    std::vector<std::int64_t> primes;
    for (std::int64_t p : primes_between(2, cfg.pmax))
        if (p != 3)
            primes.push_back(p);
    r.cases = detail::per_prime(primes, cfg.threads, [&](std::int64_t p) {
        std::vector<Int> vals;
        vals.emplace_back(eta[p]);
        vals.push_back(b_jacobi(p));
        vals.push_back(p % 3 == 1 ? b_trace_cube(p) : Int(0));
        vals.push_back(trace_report(9, 4, p).value());
        const ThreefoldMethod m = p <= 31 ? ThreefoldMethod::Naive : ThreefoldMethod::CharSum;
        const ThreefoldCount tc = count_threefold(p, m);
        vals.push_back(int_pow(p, 3) + Int(3) * p * p + 1 - tc.NV);
        bool ok = true;
        for (const auto& v : vals)
            ok = ok && v == vals.front();
        if (p <= 31) {
            const Int cs = count_threefold(p, ThreefoldMethod::CharSum).NV;
            ok = ok && cs == tc.NV;
        }
        if (p % 3 == 2)
            ok = ok && vals.front() == 0;
        return std::vector<CaseResult>{{"p=" + std::to_string(p), ok, "[" + detail::join_ints(vals) + "]"}};
    });
    return r;
}

/// The three threefold counts agree and satisfy the modularity relation.
inline SuiteReport verify_threefold(const VerifyConfig& cfg)
{
    SuiteReport r{"threefold", {}};
    std::vector<std::int64_t> primes;
    for (std::int64_t p : primes_between(2, cfg.pmax))
        if (p != 3)
            primes.push_back(p);
    const EtaProduct eta = eta3z8(std::max<std::int64_t>(cfg.pmax, 2));
    r.cases = detail::per_prime(primes, cfg.threads, [&](std::int64_t p) {
        std::vector<Int> nv;
        if (p <= kNaiveThreefoldBound)
            nv.push_back(count_threefold(p, ThreefoldMethod::Naive).NV);
        nv.push_back(count_threefold(p, ThreefoldMethod::CharSum).NV);
        nv.push_back(count_threefold(p, ThreefoldMethod::TwistProduct).NV);
        bool ok = infinity_count_check(p);
        for (const auto& v : nv)
            ok = ok && v == nv.front();
        ok = ok && Int(eta[p]) == int_pow(p, 3) + Int(3) * p * p + 1 - nv.front();
        return std::vector<CaseResult>{{"p=" + std::to_string(p), ok, "N(V)=[" + detail::join_ints(nv) + "]"}};
    });
    return r;
}

/// Prime powers q = p^e with p > 3, returned as (p, e).
inline std::pair<std::int64_t, unsigned> split_prime_power(std::uint64_t q)
{
    for (std::int64_t p = 2; static_cast<std::uint64_t>(p) <= q; ++p) {
        if (q % static_cast<std::uint64_t>(p) != 0)
            continue;
        unsigned e = 0;
        std::uint64_t r = q;
        while (r % static_cast<std::uint64_t>(p) == 0) {
            r /= static_cast<std::uint64_t>(p);
            ++e;
        }
        if (r != 1 || !is_prime(p))
            break;
        return {p, e};
    }
    fail(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
}

/// Exhaustive identity checks over one field.
inline std::vector<CaseResult> identity_cases(std::uint64_t q, std::uint64_t seed)
{
    const auto [p, e] = split_prime_power(q);
    const CharContextPtr ctx = make_char_context(cached_field(p, e));
    const CharacterContext& c = *ctx;
    const BinomialTable table(ctx);
    const std::int64_t n = c.n();
    const std::string tag = "q=" + std::to_string(q) + " ";
    std::vector<CaseResult> out;
    auto add = [&](const std::string& name, std::int64_t total, std::int64_t bad) {
        out.push_back({tag + name, bad == 0, std::to_string(total - bad) + "/" + std::to_string(total)});
    };

    std::int64_t bad = 0;
    for (std::int64_t m = 0; m < n; ++m)
        bad += orthogonality_check(c, m) ? 0 : 1;
    add("orthogonality", n, bad);

    bad = 0;
    for (std::int64_t m = 1; m < n; ++m)
        bad += (gauss_reflection_check(c, m) && gauss_norm_check(c, m)) ? 0 : 1;
    add("G_m G_-m = q T^m(-1)", n - 1, bad);

    if (n % 3 == 0) {
        bad = 0;
        for (std::int64_t k = 0; k < n; ++k)
            bad += davenport_hasse_check(c, k) ? 0 : 1;
        add("Davenport-Hasse", n, bad);
    }

    std::int64_t total = 0;
    bad = 0;
    total = 0;
    {
        std::vector<Complex> gs(static_cast<std::size_t>(n));
        for (std::int64_t m = 0; m < n; ++m)
            gs[static_cast<std::size_t>(m)] = gauss_sum(c, {m}).approx();
        for (std::int64_t m = 0; m < n; ++m)
            for (std::int64_t k = 0; k < n; ++k) {
                if (m == k)
                    continue;
                ++total;
                const Complex lhs = table.get({m}, {k}).approx();
                const Complex rhs = gs[m] * gs[mod(-k, n)] * static_cast<double>(c.sign_at_minus_one(k)) /
                                    (gs[mod(m - k, n)] * static_cast<double>(c.q()));
                bad += std::abs(lhs - rhs) <= 1e-5 ? 0 : 1;
            }
    }
    add("binomial-Gauss", total, bad);

    bad = 0;
    total = 0;
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            for (std::int64_t cc = 0; cc < n; ++cc) {
                ++total;
                bad += greene_product_check(table, {a}, {b}, {cc}) ? 0 : 1;
            }
    add("Greene product formula", total, bad);

    out.push_back({tag + "theta selector", theta_selector_check(c, seed), "50 samples"});
    return out;
}

inline SuiteReport verify_identities(const VerifyConfig& cfg)
{
    SuiteReport r{"identities", {}};
    std::vector<std::uint64_t> qs = cfg.fields;
    if (qs.empty())
        qs = {7, 13, 19, 25, 31, 37, 49};
    auto nested = parallel_map(
        qs,
        [&](std::uint64_t q) {
            try {
                return identity_cases(q, cfg.seed);
            } catch (const Error& e) {
                return std::vector<CaseResult>{{"q=" + std::to_string(q), false, e.what()}};
            }
        },
        cfg.threads);
    for (auto& v : nested)
        r.cases.insert(r.cases.end(), v.begin(), v.end());
    return r;
}

/// (1/3) sum_i t_{p^{k-2}}(y^2 + a^i y = x^3): 0 for k = 0, 1 mod 3, and
/// -p^{k-2} 2F1(9/8)_{p^{k-2}} for k = 2 mod 3 (p = 1 mod 3); the gamma and
/// beta branches for p = 2 mod 3.
inline SuiteReport verify_twists(const VerifyConfig& cfg)
{
    SuiteReport r{"twists", {}};
    std::vector<std::int64_t> primes;
    for (std::int64_t p : primes_between(2, cfg.pmax))
        if (p != 3)
            primes.push_back(p);
    r.cases = detail::per_prime(primes, cfg.threads, [](std::int64_t p) {
        std::vector<CaseResult> out;
        if (p % 3 == 1) {
            const Field& f = *cached_field(p, 1);
            const std::int64_t a = find_noncube(f);
            std::int64_t traces[3];
            std::int64_t ai = 1;
            for (int i = 0; i < 3; ++i) {
                ai = ai * a % p;
                traces[i] = frobenius_trace(f, Curve{0, ai});
            }
            const TraceTable tt(p);
            const std::int64_t x98 = 9 * inv_mod(8, p) % p;
            for (unsigned k = 4; k <= 8; ++k) {
                Rational avg = 0;
                for (auto t : traces)
                    avg += Rational(lift_trace(t, p, k - 2));
                avg /= 3;
                const Rational expect =
                    k % 3 == 2 ? -Rational(int_pow(p, k - 2)) * tt.value(x98, k - 2) : Rational(0);
                const bool vanishes = avg == 0;
                const bool ok = avg == expect && vanishes == (k % 3 != 2);
                out.push_back({"p=" + std::to_string(p) + " k=" + std::to_string(k), ok,
                               "twisted average " + to_exact_string(avg)});
            }
        } else {
            for (unsigned k = 4; k <= 8; k += 2) {
                const Rational g = gamma_k(k, p);
                const TraceTable tt(p);
                const bool ok = g == Rational(int_pow(-p, k / 2 - 1)) &&
                                beta_k(k, p, tt) == Rational(2 * int_pow(-p, k / 2 - 1));
                out.push_back({"p=" + std::to_string(p) + " k=" + std::to_string(k), ok,
                               "gamma " + to_exact_string(g)});
            }
        }
        return out;
    });
    return r;
}

/// Fiber sizes of t -> [E_t] over the classes of trace s with 3-torsion.
inline SuiteReport verify_fibers(const VerifyConfig& cfg)
{
    SuiteReport r{"fibers", {}};
    r.cases = detail::per_prime(primes_between(5, cfg.pmax), cfg.threads, [](std::int64_t p) {
        const Census census = build_census(p);
        std::int64_t bad = 0, classes = 0, missing_at_zero = 0, missing_elsewhere = 0;
        std::string first;
        const std::int64_t bound = isqrt(4 * p);
        for (std::int64_t s = -bound; s <= bound; ++s) {
            for (const auto& fe : fiber_profile(census, s)) {
                ++classes;
                std::int64_t expect = -1;
                if (p % 3 == 1) {
                    switch (fe.cls.kind) {
                    case TorsionKind::Full: expect = 4; break;
                    case TorsionKind::Full1728: expect = 2; break;
                    case TorsionKind::Cyclic:
                    case TorsionKind::FullJ0: expect = 1; break;
                    case TorsionKind::CyclicJ0: expect = 0; break;
                    case TorsionKind::None: break;
                    }
                    if (fe.fiber != expect) {
                        ++bad;
                        if (first.empty())
                            first = "s=" + std::to_string(s) + " class " + to_string(fe.cls.kind) +
                                    " fiber " + std::to_string(fe.fiber);
                    }
                } else {
                    if (fe.fiber > 1) {
                        ++bad;
                        if (first.empty())
                            first = "s=" + std::to_string(s) + " fiber " + std::to_string(fe.fiber);
                    }
                    if (fe.fiber == 0)
                        (s == 0 ? missing_at_zero : missing_elsewhere) += 1;
                }
            }
        }
        if (p % 3 == 2 && (missing_at_zero != 1 || missing_elsewhere != 0)) {
            ++bad;
            first += " missing classes: " + std::to_string(missing_at_zero) + " at s=0, " +
                     std::to_string(missing_elsewhere) + " elsewhere";
        }
        return std::vector<CaseResult>{
            {"p=" + std::to_string(p), bad == 0, std::to_string(classes) + " classes" + (bad ? "; " + first : "")}};
    });
    return r;
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"theorem1", "schoof",  "identities", "traces",
                                                "eta",      "threefold", "twists",   "fibers"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg)
{
    if (name == "theorem1")
        return verify_frobenius_hypergeom(cfg);
    if (name == "schoof")
        return verify_schoof(cfg);
    if (name == "identities")
        return verify_identities(cfg);
    if (name == "traces")
        return verify_traces(cfg);
    if (name == "eta")
        return verify_eta(cfg);
    if (name == "threefold")
        return verify_threefold(cfg);
    if (name == "twists")
        return verify_twists(cfg);
    if (name == "fibers")
        return verify_fibers(cfg);
    fail(ErrorCode::InvalidArgument, "unknown suite " + name);
}

} // namespace hh
