#include "ktrunc/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ktrunc/cycbar.hpp"
#include "ktrunc/ssengine.hpp"
#include "ktrunc/tcassemble.hpp"
#include "ktrunc/verify.hpp"

namespace ktrunc {

using nlohmann::json;

KGroupRow make_row(std::uint64_t degree, const GroupStructure& g) {
    KGroupRow row;
    row.degree = degree;
    for (const BigInt& x : g.factors()) {
        if (x > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("invariant factor does not fit in 64 bits");
        row.factors.push_back(x.convert_to<std::uint64_t>());
    }
    return row;
}

std::string render_json(const KGroupTable& table) {
    json groups = json::array();
    for (const auto& row : table.rows)
        groups.push_back({{"degree", row.degree}, {"factors", row.factors}});
    json j = {{"p", table.p}, {"e", table.e}, {"f", table.f}, {"groups", groups}};
    return j.dump();
}

KGroupTable parse_json(const std::string& text) {
    KGroupTable t;
    try {
        const json j = json::parse(text);
        t.p = j.at("p").get<std::uint64_t>();
        t.e = j.at("e").get<std::uint64_t>();
        t.f = j.at("f").get<unsigned>();
        for (const auto& g : j.at("groups")) {
            KGroupRow row;
            row.degree = g.at("degree").get<std::uint64_t>();
            row.factors = g.at("factors").get<std::vector<std::uint64_t>>();
            t.rows.push_back(std::move(row));
        }
    } catch (const json::exception& err) {
        throw std::invalid_argument(std::string("malformed K-group json: ") + err.what());
    }
    return t;
}

std::string render_table(const KGroupTable& table) {
    std::ostringstream os;
    os << "K_n(F_" << table.p;
    if (table.f > 1)
        os << "^" << table.f;
    os << "[x]/(x^" << table.e << "), (x))\n";
    os << std::left << std::setw(8) << "degree" << std::setw(40) << "group" << "order\n";
    for (const auto& row : table.rows) {
        std::string group = "0";
        BigInt order = 1;
        for (std::size_t i = 0; i < row.factors.size(); ++i) {
            group = i == 0 ? "" : group + " + ";
            group += "Z/" + std::to_string(row.factors[i]);
            order *= row.factors[i];
        }
        os << std::setw(8) << row.degree << std::setw(40) << group << order << "\n";
    }
    return os.str();
}

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void require_prime(std::uint64_t p) {
    if (!is_prime(p))
        throw UsageError(std::to_string(p) + " is not prime");
}

void require_positive(std::uint64_t x, const char* what) {
    if (x == 0)
        throw UsageError(std::string(what) + " must be positive");
}

struct Common {
    std::uint64_t p = 2;
    std::uint64_t e = 2;
    std::uint64_t r = 0;
    std::uint64_t r_max = 3;
    unsigned m = 0;
    unsigned m_max = 6;
    unsigned f = 1;
    std::string format = "table";
    std::uint64_t seed = 0;
    std::uint64_t enum_bound = kDefaultEnumBound;
    std::string suite = "all";
    std::string mode = "tate";
    bool dump_page = false;
    long long min_degree = -10;
    long long max_degree = 10;
};

void cmd_kgroups(const Common& c, CLI::App& sub, std::ostream& out) {
    require_prime(c.p);
    require_positive(c.e, "e");
    require_positive(c.f, "f");
    std::uint64_t lo = 1, hi = c.r_max;
    if (sub.count("--r") != 0)
        lo = hi = c.r;
    require_positive(lo, "r");
    require_positive(hi, "rmax");

    KGroupTable table{c.p, c.e, c.f, {}};
    const TcOptions opts{c.seed, std::nullopt};
    for (std::uint64_t r = lo; r <= hi; ++r) {
        // K_{2r-2} sits between K_{2r-3} and K_{2r-1}; shown when in range
        if (r > lo)
            table.rows.push_back(make_row(2 * r - 2, tc_in_degree(c.p, c.e, 2 * r - 2, c.f, opts)));
        table.rows.push_back(make_row(2 * r - 1, k_groups(c.p, c.e, r, c.f, opts)));
    }
    out << (c.format == "json" ? render_json(table) + "\n" : render_table(table));
}

void cmd_hh(const Common& c, CLI::App& sub, std::ostream& out) {
    require_prime(c.p);
    if (c.e < 2)
        throw UsageError("e must be at least 2");
    unsigned lo = 1, hi = c.m_max;
    if (sub.count("--m") != 0)
        lo = hi = c.m;
    require_positive(lo, "m");

    json rows = json::array();
    bool all_match = true;
    std::ostringstream text;
    for (unsigned m = lo; m <= hi; ++m) {
        const HomologySummary h = reduced_homology(generate_complex(static_cast<unsigned>(c.e), m, c.p));
        auto pred = predicted_ranks(static_cast<unsigned>(c.e), m, c.p);
        pred.resize(h.ranks.size(), 0);
        const bool match = pred == h.ranks;
        all_match = all_match && match;

        text << "m=" << m << " d=" << h.d << "  ";
        json ranks = json::object();
        std::string sep;
        for (std::size_t n = 0; n < h.ranks.size(); ++n)
            if (h.ranks[n] != 0) {
                text << sep << "deg " << n << ": " << h.ranks[n];
                ranks[std::to_string(n)] = h.ranks[n];
                sep = ", ";
            }
        if (!h.low_degree)
            text << "all zero";
        json row = {{"m", m}, {"d", h.d}, {"ranks", ranks}, {"matches_lemma", match}};
        if (h.low_degree) {
            const std::uint64_t b = h.connes_scalar.value_or(0);
            text << ", B = " << b;
            row["connes"] = b;
            if (h.integral_connes) {
                text << " [integral " << *h.integral_connes << "]";
                row["integral_connes"] = h.integral_connes->convert_to<long long>();
            }
        }
        text << (match ? "" : "  MISMATCH with the lemma") << "\n";
        rows.push_back(row);
    }
    if (c.format == "json")
        out << json{{"p", c.p}, {"e", c.e}, {"rows", rows}}.dump() << "\n";
    else
        out << text.str();
    if (!all_match)
        throw VerificationError("homology differs from the lemma");
}

void cmd_ss(const Common& c, CLI::App& sub, std::ostream& out) {
    require_prime(c.p);
    if (c.e < 2)
        throw UsageError("e must be at least 2");
    if (sub.count("--m") == 0)
        throw UsageError("ss needs --m");
    require_positive(c.m, "m");
    if (c.mode != "tate" && c.mode != "hfp")
        throw UsageError("mode must be tate or hfp");
    if (c.min_degree > c.max_degree)
        throw UsageError("empty degree range");
    const PageMode mode = c.mode == "tate" ? PageMode::tate : PageMode::hfp;
    const HomologySummary h = reduced_homology(generate_complex(static_cast<unsigned>(c.e), c.m, c.p));
    const BigradedPage page = build_e2(h, mode);
    const SpectralRun run(page, standard_patterns(page, h));

    json degrees = json::array();
    std::ostringstream text;
    text << "E2 " << to_string(mode) << " p=" << c.p << " e=" << c.e << " m=" << c.m << ":";
    for (const auto& g : page.generators)
        text << " " << g.name(c.m) << "(0," << g.vertical << ")";
    if (page.empty())
        text << " empty";
    text << "\n";
    for (const auto& pat : run.patterns())
        text << "d" << pat.page << "(" << page.generators[pat.source].name(c.m) << ") = " << pat.coefficient
             << (pat.up_to_unit ? " (up to a unit)" : "") << " * t^" << pat.t_shift << " x^" << pat.x_shift << " "
             << page.generators[pat.target].name(c.m) << "\n";
    for (long long n = c.min_degree; n <= c.max_degree; ++n) {
        const GroupStructure g = run.group(n);
        text << "pi_" << n << " = " << g.to_string() << "\n";
        degrees.push_back({{"degree", n}, {"length", g.length()}});
    }
    if (c.dump_page)
        run.dump(text, c.min_degree, c.max_degree);
    if (c.format == "json")
        out << json{{"p", c.p}, {"e", c.e}, {"m", c.m}, {"mode", c.mode}, {"degrees", degrees}}.dump() << "\n";
    else
        out << text.str();
}

bool cmd_verify(const Common& c, CLI::App& sub, std::ostream& out) {
    VerifyConfig cfg;
    cfg.seed = c.seed;
    cfg.enum_bound = c.enum_bound;
    if (sub.count("--p") != 0) {
        require_prime(c.p);
        cfg.primes = {c.p};
    }
    if (sub.count("--e") != 0) {
        require_positive(c.e, "e");
        cfg.exponents = {static_cast<unsigned>(c.e)};
    }
    if (sub.count("--rmax") != 0)
        cfg.r_max = c.r_max;
    if (sub.count("--mmax") != 0)
        cfg.m_max = c.m_max;
    return run_suite(c.suite, cfg, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Relative K-groups of truncated polynomial algebras over finite fields", "ktrunc"};
    app.require_subcommand(1);
    Common c;
    const std::vector<std::string> formats = {"json", "table"};

    auto* kg = app.add_subcommand("kgroups", "K_n(F_q[x]/(x^e), (x)) for n < 2 rmax");
    kg->add_option("--p", c.p, "characteristic")->required();
    kg->add_option("--e", c.e, "truncation exponent")->required();
    auto* r_opt = kg->add_option("--r", c.r, "single r, giving degree 2r-1");
    kg->add_option("--rmax", c.r_max, "largest r")->excludes(r_opt);
    kg->add_option("--f", c.f, "residue degree of the field");
    kg->add_option("--format", c.format)->check(CLI::IsMember(formats));
    kg->add_option("--seed", c.seed);

    auto* hh = app.add_subcommand("hh", "homology of the weight-m cyclic bar complex");
    hh->add_option("--p", c.p)->required();
    hh->add_option("--e", c.e)->required();
    auto* m_opt = hh->add_option("--m", c.m);
    hh->add_option("--mmax", c.m_max)->excludes(m_opt);
    hh->add_option("--format", c.format)->check(CLI::IsMember(formats));

    auto* ss = app.add_subcommand("ss", "Tate / homotopy fixed point spectral sequence of one weight");
    ss->add_option("--p", c.p)->required();
    ss->add_option("--e", c.e)->required();
    ss->add_option("--m", c.m)->required();
    ss->add_option("--mode", c.mode)->check(CLI::IsMember({"tate", "hfp"}));
    ss->add_option("--min-degree", c.min_degree);
    ss->add_option("--max-degree", c.max_degree);
    ss->add_flag("--dump-page", c.dump_page, "list every class with its fate");
    ss->add_option("--format", c.format)->check(CLI::IsMember(formats));

    auto* vf = app.add_subcommand("verify", "run verification suites");
    vf->add_option("--suite", c.suite)->check(CLI::IsMember(suite_names()));
    vf->add_option("--seed", c.seed);
    vf->add_option("--enum-bound", c.enum_bound);
    vf->add_option("--p", c.p);
    vf->add_option("--e", c.e);
    vf->add_option("--rmax", c.r_max);
    vf->add_option("--mmax", c.m_max);

    std::vector<std::string> argv_store{"ktrunc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (kg->parsed())
            cmd_kgroups(c, *kg, out);
        else if (hh->parsed())
            cmd_hh(c, *hh, out);
        else if (ss->parsed())
            cmd_ss(c, *ss, out);
        else if (vf->parsed())
            return cmd_verify(c, *vf, out) ? exit_code::ok : exit_code::verification_failure;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const VerificationError& e) {
        err << "verification failure: " << e.what() << "\n";
        return exit_code::verification_failure;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    }
    return exit_code::ok;
}

}  // namespace ktrunc
