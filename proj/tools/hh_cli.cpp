// Command-line front end: traces, verification sweeps and data tables.
//
// Exit status: 0 success, 1 usage error, 2 inconsistency detected,
// 3 resource bound exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hh/hh.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

enum Exit { kOk = 0, kUsage = 1, kInconsistent = 2, kResource = 3 };

struct Options {
    std::string format = "plain";
    std::string out;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::uint64_t field_bound = 0;
};

json exact(const hh::Int& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

json exact(const hh::Rational& r)
{
    if (hh::is_integer(r))
        return exact(hh::Int(boost::multiprecision::numerator(r)));
    return hh::to_exact_string(r);
}

/// Rows of strings rendered as an aligned table or as CSV.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void render(std::ostream& os, bool csv) const
    {
        if (csv) {
            for (std::size_t i = 0; i < columns.size(); ++i)
                os << (i ? "," : "") << columns[i];
            os << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) {
                    const bool quote = r[i].find_first_of(",\" ") != std::string::npos;
                    os << (i ? "," : "");
                    if (quote) {
                        os << '"';
                        for (char ch : r[i])
                            os << (ch == '"' ? "\"\"" : std::string(1, ch));
                        os << '"';
                    } else {
                        os << r[i];
                    }
                }
                os << '\n';
            }
            return;
        }
        std::vector<std::size_t> width(columns.size());
        for (std::size_t i = 0; i < columns.size(); ++i)
            width[i] = columns[i].size();
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
                width[i] = std::max(width[i], r[i].size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                os << cells[i];
                if (i + 1 < cells.size())
                    os << std::string(width[i] - cells[i].size() + 2, ' ');
            }
            os << '\n';
        };
        line(columns);
        for (const auto& r : rows)
            line(r);
    }
};

std::vector<std::int64_t> parse_primes(const std::string& prime, const std::string& range)
{
    if (!prime.empty() && !range.empty())
        throw CLI::ValidationError("--prime and --primes are mutually exclusive");
    if (!prime.empty())
        return {std::stoll(prime)};
    if (range.empty())
        throw CLI::ValidationError("one of --prime or --primes is required");
    const auto dots = range.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--primes expects a range a..b");
    const std::int64_t lo = std::stoll(range.substr(0, dots));
    const std::int64_t hi = std::stoll(range.substr(dots + 2));
    if (lo > hi)
        throw CLI::ValidationError("empty prime range");
    return hh::primes_between(lo, hi);
}

int emit(const Options& opt, const json& doc, const Table& table)
{
    std::ostringstream buf;
    if (opt.format == "json")
        buf << doc.dump(2) << '\n';
    else
        table.render(buf, opt.format == "csv");
    if (opt.out.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(opt.out);
        if (!f)
            throw CLI::ValidationError("cannot open " + opt.out);
        f << buf.str();
    }
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_trace(const Options& opt, int level, unsigned weight, const std::vector<std::int64_t>& primes)
{
    for (std::int64_t p : primes)
        hh::check_trace_args(level, weight, p);
    const auto reports = hh::parallel_map(
        primes, [&](std::int64_t p) { return hh::trace_report(level, weight, p); }, opt.threads);

    json doc{{"schema", std::string("hh.trace/") + kSchemaVersion}, {"reports", json::array()}};
    Table table{{"level", "weight", "prime", "trace", "hijikata", "curve_sum", "hypergeom_sum", "inductive", "agree"},
                {}};
    bool all_agree = true;
    for (const auto& r : reports) {
        const bool agree = r.agree();
        all_agree = all_agree && agree;
        json methods = json::object();
        std::vector<std::string> row{std::to_string(r.level), std::to_string(r.k), std::to_string(r.p),
                                     agree ? r.present().front().str() : "?"};
        for (const auto& [name, slot] : {std::pair{"hijikata", &r.hijikata}, std::pair{"curve_sum", &r.curve_sum},
                                         std::pair{"hypergeom_sum", &r.hypergeom_sum},
                                         std::pair{"inductive", &r.inductive}}) {
            if (*slot) {
                methods[name] = exact(**slot);
                row.push_back((*slot)->str());
            } else {
                row.push_back("-");
            }
        }
        row.push_back(agree ? "yes" : "no");
        table.rows.push_back(row);

        json breakdown = json::object();
        for (const auto& [method, terms] : r.breakdown) {
            json t = json::object();
            for (const auto& [term, value] : terms)
                t[term] = exact(value);
            breakdown[method] = t;
        }
        json entry{{"level", r.level}, {"weight", r.k}, {"prime", r.p}};
        entry["trace"] = agree ? exact(r.present().front()) : json(nullptr);
        entry["agree"] = agree;
        entry["methods"] = methods;
        entry["breakdown"] = breakdown;
        doc["reports"].push_back(entry);
    }
    emit(opt, doc, table);
    return all_agree ? kOk : kInconsistent;
}

int cmd_verify(const Options& opt, const std::string& suite, std::int64_t pmax, const std::vector<std::uint64_t>& qs,
               const std::vector<unsigned>& weights)
{
    hh::VerifyConfig cfg;
    cfg.pmax = pmax;
    cfg.fields = qs;
    if (!weights.empty())
        cfg.weights = weights;
    cfg.threads = opt.threads;
    cfg.seed = opt.seed;

    std::vector<std::string> names;
    if (suite == "all")
        names = hh::suite_names();
    else
        names = {suite};

    json doc{{"schema", std::string("hh.verify/") + kSchemaVersion}, {"suites", json::array()}};
    Table table{{"suite", "case", "result", "detail"}, {}};
    bool all_pass = true;
    for (const auto& name : names) {
        const hh::SuiteReport rep = hh::run_suite(name, cfg);
        all_pass = all_pass && rep.passed();
        json cases = json::array();
        for (const auto& c : rep.cases) {
            cases.push_back({{"case", c.label}, {"pass", c.pass}, {"detail", c.detail}});
            table.rows.push_back({name, c.label, c.pass ? "PASS" : "FAIL", c.detail});
        }
        doc["suites"].push_back({{"suite", name},
                                 {"pass", rep.passed()},
                                 {"cases", rep.cases.size()},
                                 {"failures", rep.failures()},
                                 {"results", cases}});
        table.rows.push_back({name, "total", rep.passed() ? "PASS" : "FAIL",
                              std::to_string(rep.cases.size() - rep.failures()) + "/" +
                                  std::to_string(rep.cases.size()) + " cases"});
    }
    doc["pass"] = all_pass;
    emit(opt, doc, table);
    return all_pass ? kOk : kInconsistent;
}

int cmd_table_census(const Options& opt, std::int64_t p)
{
    const hh::Census c = hh::build_census(p);
    json doc{{"schema", std::string("hh.table.census/") + kSchemaVersion}, {"prime", p}, {"rows", json::array()}};
    Table table{{"s", "N", "N3", "N3x3"}, {}};
    for (const auto& r : c.rows) {
        doc["rows"].push_back({{"s", r.s}, {"N", r.N}, {"N3", r.N3}, {"N3x3", r.N3x3}});
        table.rows.push_back({std::to_string(r.s), std::to_string(r.N), std::to_string(r.N3), std::to_string(r.N3x3)});
    }
    return emit(opt, doc, table);
}

int cmd_table_eta(const Options& opt, const std::string& form, std::int64_t n)
{
    hh::EtaProduct e;
    if (form == "eta3z8")
        e = hh::eta3z8(n);
    else if (form == "eta1z6eta3z6")
        e = hh::eta_z6_3z6(n);
    else
        throw CLI::ValidationError("--form must be eta3z8 or eta1z6eta3z6");
    json doc{{"schema", std::string("hh.table.eta/") + kSchemaVersion}, {"form", form}, {"rows", json::array()}};
    Table table{{"n", "coefficient"}, {}};
    for (std::int64_t i = 1; i <= n; ++i) {
        doc["rows"].push_back({{"n", i}, {"coefficient", e[i]}});
        table.rows.push_back({std::to_string(i), std::to_string(e[i])});
    }
    return emit(opt, doc, table);
}

int cmd_table_hyp(const Options& opt, std::int64_t p, unsigned e)
{
    const hh::FieldPtr f = hh::cached_field(p, e);
    json doc{{"schema", std::string("hh.table.hyp/") + kSchemaVersion},
             {"prime", p},
             {"degree", e},
             {"rows", json::array()}};
    Table table{{"x", "value"}, {}};
    for (std::uint64_t x = 0; x < f->q(); ++x) {
        const hh::Rational v = hh::fast_2f1_rho(*f, static_cast<hh::Elem>(x));
        doc["rows"].push_back({{"x", x}, {"value", exact(v)}});
        table.rows.push_back({std::to_string(x), hh::to_exact_string(v)});
    }
    return emit(opt, doc, table);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Traces of Hecke operators on levels 3 and 9, hypergeometric sums over finite fields, "
                 "and the point count of a modular threefold."};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}))
        ->capture_default_str();
    app.add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1U, 1024U))->capture_default_str();
    app.add_option("--seed", opt.seed, "seed for sampled identity checks")->capture_default_str();
    app.add_option("--out", opt.out, "write output to this file instead of stdout");
    app.add_option("--field-bound", opt.field_bound, "largest field size q (overrides HH_FIELD_BOUND)");

    auto* trace = app.add_subcommand("trace", "trace of T_k(p) by every available method");
    int level = 3;
    unsigned weight = 4;
    std::string prime, primes;
    trace->add_option("--level", level, "3 or 9")->required()->check(CLI::IsMember({3, 9}));
    trace->add_option("--weight", weight, "even weight k >= 2")->required();
    trace->add_option("--prime", prime, "a single prime p != 3");
    trace->add_option("--primes", primes, "all primes in a range a..b (3 is skipped)");

    auto* verify = app.add_subcommand("verify", "run an invariant sweep");
    std::string suite = "all";
    std::int64_t pmax = 37;
    std::vector<std::uint64_t> qs;
    std::vector<unsigned> weights;
    std::vector<std::string> suites = hh::suite_names();
    suites.push_back("all");
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites))->capture_default_str();
    verify->add_option("--pmax", pmax, "largest prime in prime sweeps")->capture_default_str();
    verify->add_option("--q", qs, "field sizes for the identity suite (repeatable)");
    verify->add_option("--weights", weights, "weights for the trace suite");

    auto* table = app.add_subcommand("table", "dump a data table");
    table->require_subcommand(1);
    table->fallthrough();
    auto* census = table->add_subcommand("census", "isomorphism classes by trace; columns s,N,N3,N3x3");
    std::int64_t table_prime = 0;
    census->add_option("--prime", table_prime, "prime p > 3")->required();
    auto* eta = table->add_subcommand("eta", "eta-product coefficients; columns n,coefficient");
    std::string form = "eta3z8";
    std::int64_t n = 50;
    eta->add_option("--form", form, "eta3z8 or eta1z6eta3z6")->capture_default_str();
    eta->add_option("--n", n, "number of coefficients")->capture_default_str();
    auto* hyp = table->add_subcommand("hyp", "2F1(rho, rho^2; eps | x) for every x in F_q; columns x,value");
    std::int64_t hyp_prime = 0;
    unsigned hyp_degree = 1;
    hyp->add_option("--prime", hyp_prime, "prime p = 1 mod 3, or any p > 3 with an even --degree")->required();
    hyp->add_option("--degree", hyp_degree, "extension degree e")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (opt.field_bound != 0)
            setenv("HH_FIELD_BOUND", std::to_string(opt.field_bound).c_str(), 1);
        if (trace->parsed()) {
            std::vector<std::int64_t> list = parse_primes(prime, primes);
            if (!primes.empty())
                list.erase(std::remove(list.begin(), list.end(), 3), list.end());
            if (list.empty())
                throw CLI::ValidationError("no primes in range");
            return cmd_trace(opt, level, weight, list);
        }
        if (verify->parsed())
            return cmd_verify(opt, suite, pmax, qs, weights);
        if (census->parsed())
            return cmd_table_census(opt, table_prime);
        if (eta->parsed())
            return cmd_table_eta(opt, form, n);
        if (hyp->parsed())
            return cmd_table_hyp(opt, hyp_prime, hyp_degree);
        return kUsage;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const hh::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.is_inconsistency())
            return kInconsistent;
        if (e.is_resource_bound())
            return kResource;
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << '\n';
        return kUsage;
    }
}
