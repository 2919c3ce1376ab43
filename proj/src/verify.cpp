#include "ktrunc/verify.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ktrunc/cycbar.hpp"
#include "ktrunc/ssengine.hpp"
#include "ktrunc/witt.hpp"

namespace ktrunc {

void CheckResult::fail(const std::string& why) {
    if (pass)
        detail = why;
    pass = false;
}

std::ostream& operator<<(std::ostream& os, const CheckResult& r) {
    os << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
    if (!r.detail.empty())
        os << ": " << r.detail;
    return os;
}

namespace {

WittVector random_witt(std::mt19937_64& rng, const TruncationSet& s, CoeffRing ring, long long spread) {
    std::uniform_int_distribution<long long> dist(ring.is_integers() ? -spread : 0,
                                                  ring.is_integers() ? spread : static_cast<long long>(ring.prime) - 1);
    std::vector<BigInt> c(s.size());
    for (auto& x : c)
        x = dist(rng);
    return WittVector(s, ring, std::move(c));
}

bool same(const WittVector& a, const WittVector& b) {
    return a.truncation() == b.truncation() && a.coords() == b.coords();
}

std::string params_string(std::uint64_t p, std::uint64_t e, std::uint64_t r) {
    return "p=" + std::to_string(p) + " e=" + std::to_string(e) + " r=" + std::to_string(r);
}

std::vector<std::size_t> padded(std::vector<std::size_t> v, std::size_t n) {
    v.resize(std::max(v.size(), n), 0);
    return v;
}

// total degree 2r+1 -> r, rounding toward minus infinity
long long odd_index(long long n) { return n >= 1 ? (n - 1) / 2 : -((1 - n + 1) / 2); }

}  // namespace

CheckResult check_ghost_homomorphism(std::uint64_t seed, std::size_t pairs, std::uint64_t length) {
    CheckResult res{"ghost-homomorphism"};
    std::mt19937_64 rng(seed);
    const TruncationSet s = TruncationSet::big(length);
    for (std::size_t i = 0; i < pairs; ++i) {
        const WittVector a = random_witt(rng, s, CoeffRing::integers(), 9);
        const WittVector b = random_witt(rng, s, CoeffRing::integers(), 9);
        const auto ga = ghost_vector(a), gb = ghost_vector(b);
        const auto gs = ghost_vector(witt_add(a, b)), gp = ghost_vector(witt_mul(a, b));
        const auto gn = ghost_vector(witt_neg(a));
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (gs[k] != ga[k] + gb[k])
                res.fail("sum fails at n=" + std::to_string(s.elements()[k]));
            if (gp[k] != ga[k] * gb[k])
                res.fail("product fails at n=" + std::to_string(s.elements()[k]));
            if (gn[k] != -ga[k])
                res.fail("negation fails at n=" + std::to_string(s.elements()[k]));
        }
        if (!same(from_ghost(s, ga), a))
            res.fail("from_ghost does not invert ghost");
        ++res.cases;
    }
    return res;
}

CheckResult check_frobenius_verschiebung(std::uint64_t seed, std::uint64_t d_max, std::size_t trials) {
    CheckResult res{"frobenius-verschiebung"};
    std::mt19937_64 rng(seed);
    const CoeffRing rings[] = {CoeffRing::integers(), CoeffRing::fp(2), CoeffRing::fp(3), CoeffRing::fp(5)};
    for (std::uint64_t d = 1; d <= d_max; ++d) {
        for (std::size_t t = 0; t < trials; ++t) {
            const CoeffRing ring = rings[t % 4];
            const std::uint64_t n = 1 + t % 6;
            const WittVector a = random_witt(rng, TruncationSet::big(n), ring, 20);
            const WittVector fv = frobenius(d, verschiebung(d, a, TruncationSet::big(d * n)));
            if (!same(fv, witt_scale(BigInt(d), a)))
                res.fail("F_" + std::to_string(d) + " V_" + std::to_string(d) + " != " + std::to_string(d) +
                         " on length " + std::to_string(n));
            ++res.cases;
        }
    }
    return res;
}

CheckResult check_commuting_square(std::uint64_t seed, std::size_t trials) {
    CheckResult res{"commuting-square"};
    std::mt19937_64 rng(seed);
    const std::uint64_t primes[] = {2, 3, 5};
    std::size_t nonzero = 0;
    while (res.cases < trials) {
        const std::uint64_t p = primes[rng() % 3];
        const std::uint64_t e = 1 + rng() % 8;
        const std::uint64_t r = 1 + rng() % 4;
        const SplitParams sp = SplitParams::make(p, r, e);
        std::uint64_t m = 1 + rng() % (r * e);
        if (m % p == 0)
            continue;
        const WittVector a = random_witt(rng, TruncationSet::big(r), CoeffRing::integers(), 6);
        const WittVector va = verschiebung(e, a, TruncationSet::big(r * e));
        const WittVector lhs = witt_component(va, p, m);
        const unsigned s_big = s_function(p, r * e, m);
        const TruncationSet target = TruncationSet::p_typical(p, s_big);
        WittVector rhs = WittVector::zero(target, CoeffRing::integers());
        if (m % sp.e_prime == 0 && m / sp.e_prime <= r) {
            const std::uint64_t d = m / sp.e_prime;
            if (s_function(p, r, d) + sp.u != s_big)
                res.fail("index shift s(p,re,m') != s(p,r,d) + u for " + params_string(p, e, r));
            const WittVector id = witt_component(a, p, d);
            rhs = witt_scale(BigInt(sp.e_prime), verschiebung(power(p, sp.u).convert_to<std::uint64_t>(), id, target));
            ++nonzero;
        }
        if (!same(lhs, rhs))
            res.fail("square fails for " + params_string(p, e, r) + " m'=" + std::to_string(m));
        ++res.cases;
    }
    res.detail = res.pass ? std::to_string(nonzero) + " with e' | m'" : res.detail;
    return res;
}

CheckResult check_order_identity(std::uint64_t p_max, std::uint64_t e_max, std::uint64_t r_max) {
    CheckResult res{"order-identity"};
    for (std::uint64_t p = 2; p <= p_max; ++p) {
        if (!is_prime(p))
            continue;
        for (std::uint64_t e = 1; e <= e_max; ++e)
            for (std::uint64_t r = 1; r <= r_max; ++r) {
                const unsigned len = predicted_quotient(SplitParams::make(p, r, e)).length();
                if (len != r * (e - 1))
                    res.fail(params_string(p, e, r) + ": sum h = " + std::to_string(len));
                ++res.cases;
            }
    }
    return res;
}

CheckResult check_brute_force(std::uint64_t enum_bound) {
    CheckResult res{"brute-force-quotient"};
    std::size_t skipped = 0;
    for (std::uint64_t p = 2; p <= enum_bound; ++p) {
        if (!is_prime(p))
            continue;
        for (std::uint64_t n = 1;; ++n) {
            // n = re; stop once p^n leaves the bound
            BigInt size = power(p, static_cast<unsigned>(n));
            if (size > enum_bound)
                break;
            for (std::uint64_t e = 1; e <= n; ++e) {
                if (n % e != 0)
                    continue;
                if (n == 1 && p > 256) {
                    ++skipped;
                    continue;
                }
                const SplitParams sp = SplitParams::make(p, n / e, e);
                const GroupStructure a = brute_force_quotient(sp, enum_bound);
                const GroupStructure b = predicted_quotient(sp);
                if (!(a == b))
                    res.fail(params_string(p, e, n / e) + ": enumerated " + a.to_string() + ", predicted " +
                             b.to_string());
                ++res.cases;
            }
        }
    }
    if (res.pass)
        res.detail = std::to_string(skipped) + " single-coordinate cases with p > 256 not enumerated";
    return res;
}

CheckResult check_brute_force(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                              std::uint64_t r_max, std::uint64_t enum_bound) {
    CheckResult res{"brute-force-quotient"};
    for (std::uint64_t p : primes)
        for (unsigned e : exponents)
            for (std::uint64_t r = 1; r <= r_max; ++r) {
                if (power(p, static_cast<unsigned>(r * e)) > enum_bound)
                    break;
                const SplitParams sp = SplitParams::make(p, r, e);
                const GroupStructure a = brute_force_quotient(sp, enum_bound);
                const GroupStructure b = predicted_quotient(sp);
                if (!(a == b))
                    res.fail(params_string(p, e, r) + ": enumerated " + a.to_string() + ", predicted " +
                             b.to_string());
                ++res.cases;
            }
    return res;
}

CheckResult check_homology_lemma(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                                 unsigned m_max) {
    CheckResult res{"homology-lemma"};
    for (std::uint64_t p : primes)
        for (unsigned e : exponents)
            for (unsigned m = 1; m <= m_max; ++m) {
                const std::string where = "p=" + std::to_string(p) + " e=" + std::to_string(e) + " m=" +
                                          std::to_string(m);
                try {
                    const HomologySummary h = reduced_homology(generate_complex(e, m, p));
                    const std::size_t n = h.ranks.size() + 2;
                    const auto bar = padded(h.ranks, n);
                    if (bar != padded(predicted_ranks(e, m, p), n))
                        res.fail(where + ": bar complex disagrees with the closed form");
                    if (bar != padded(small_complex_hh(e, m, p), n))
                        res.fail(where + ": bar complex disagrees with the small complex");
                } catch (const VerificationError& err) {
                    res.fail(where + ": " + err.what());
                }
                ++res.cases;
            }
    return res;
}

CheckResult check_connes(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                         unsigned m_max) {
    CheckResult res{"connes-scalar"};
    for (std::uint64_t p : primes)
        for (unsigned e : exponents)
            for (unsigned m = 1; m <= m_max; ++m) {
                const std::string where = "p=" + std::to_string(p) + " e=" + std::to_string(e) + " m=" +
                                          std::to_string(m);
                const HomologySummary h = reduced_homology(generate_complex(e, m, p));
                if (m % e != 0) {
                    if (!h.integral_connes || (*h.integral_connes != m && *h.integral_connes != -BigInt(m)))
                        res.fail(where + ": integral scalar is not +-m");
                    const bool zero = h.connes_rank == 0;
                    if (zero != (m % p == 0))
                        res.fail(where + ": induced map vanishes iff p | m fails");
                    if (h.connes_scalar.value_or(p) != m % p && h.connes_scalar.value_or(p) != (p - m % p) % p)
                        res.fail(where + ": scalar mod p is not +-m");
                } else if (h.connes_rank != 0 || h.connes_scalar.value_or(0) != 0) {
                    res.fail(where + ": induced map is nonzero although e | m");
                }
                ++res.cases;
            }
    return res;
}

CheckResult check_spectral(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                           unsigned m_max, long long lo, long long hi, std::uint64_t seed) {
    CheckResult res{"spectral-sequence"};
    std::mt19937_64 rng(seed);
    for (std::uint64_t p : primes)
        for (unsigned e : exponents)
            for (unsigned m = 1; m <= m_max; ++m) {
                const HomologySummary h = reduced_homology(generate_complex(e, m, p));
                for (PageMode mode : {PageMode::tate, PageMode::hfp}) {
                    const std::string where = "p=" + std::to_string(p) + " e=" + std::to_string(e) + " m=" +
                                              std::to_string(m) + " " + to_string(mode);
                    try {
                        const BigradedPage page = build_e2(h, mode);
                        const auto patterns = standard_patterns(page, h);
                        auto shuffled = patterns;
                        for (auto& pat : shuffled)
                            if (pat.coefficient % p != 0)
                                pat.coefficient = 1 + rng() % (p - 1);
                        const SpectralRun run(page, patterns);
                        const SpectralRun alt(page, shuffled);
                        for (long long n = lo; n <= hi; ++n) {
                            const auto surv = run.survivors(n);
                            std::size_t want = 0;
                            if (n % 2 != 0) {
                                const TowerGroup t = closed_form(p, e, m, odd_index(n));
                                want = mode == PageMode::tate ? t.tp_length : t.tcminus_length;
                            }
                            if (surv.size() != want)
                                res.fail(where + " degree " + std::to_string(n) + ": " +
                                         std::to_string(surv.size()) + " survivors, closed form " +
                                         std::to_string(want));
                            if (alt.survivors(n) != surv)
                                res.fail(where + " degree " + std::to_string(n) + ": survivors depend on units");
                            const GroupStructure g = run.group(n);
                            if (g.exponents.size() > 1 || g.length() != want)
                                res.fail(where + ": E-infinity is not one cyclic group");
                        }
                    } catch (const std::exception& err) {
                        res.fail(where + ": " + err.what());
                    }
                    ++res.cases;
                }
            }
    return res;
}

CheckResult check_equalizer(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                            std::uint64_t r_max, std::uint64_t seed, std::size_t seeds) {
    CheckResult res{"equalizer-robustness"};
    for (std::uint64_t p : primes)
        for (unsigned e : exponents)
            for (std::uint64_t r = 1; r <= r_max; ++r) {
                const SplitParams sp = SplitParams::make(p, r, e);
                for (std::uint64_t m = 1; m <= r * e; ++m) {
                    if (m % p == 0)
                        continue;
                    const std::string where = params_string(p, e, r) + " m'=" + std::to_string(m);
                    try {
                        const GroupStructure base = tc_weight_group(p, e, r, m, TcOptions{seed, std::nullopt});
                        const unsigned v0 = default_truncation(sp, m);
                        for (std::size_t k = 0; k < seeds; ++k)
                            if (!(equalizer_model(sp, m, v0, seed + 1 + k).kernel() == base))
                                res.fail(where + ": kernel changes with the units");
                        for (unsigned v = v0; v <= v0 + 4; ++v)
                            if (!(equalizer_model(sp, m, v, seed).kernel() == base))
                                res.fail(where + ": kernel changes at truncation " + std::to_string(v));
                    } catch (const VerificationError& err) {
                        res.fail(err.what());
                    }
                    ++res.cases;
                }
            }
    return res;
}

CheckResult check_routes(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                         std::uint64_t r_max, std::uint64_t enum_bound, std::uint64_t seed,
                         std::vector<CrossCheckReport>* table) {
    CheckResult res{"three-routes"};
    std::size_t skipped = 0;
    for (std::uint64_t p : primes)
        for (unsigned e : exponents)
            for (std::uint64_t r = 1; r <= r_max; ++r) {
                const CrossCheckReport rep = cross_check(p, e, r, enum_bound, seed);
                if (!rep.brute_force)
                    ++skipped;
                if (!rep.pass)
                    res.fail(rep.to_string());
                if (!tc_in_degree(p, e, 2 * r).trivial())
                    res.fail(params_string(p, e, r) + ": even degree is not trivial");
                if (table)
                    table->push_back(rep);
                ++res.cases;
            }
    if (res.pass)
        res.detail = std::to_string(skipped) + " without route A";
    return res;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"witt", "split", "hh", "ss", "equalizer", "routes", "all"};
    return names;
}

bool run_suite(const std::string& suite, const VerifyConfig& config, std::ostream& os) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw std::invalid_argument("unknown suite '" + suite + "'");
    auto pick = [](const std::vector<std::uint64_t>& given, std::vector<std::uint64_t> fallback) {
        return given.empty() ? fallback : given;
    };
    auto pick_e = [](const std::vector<unsigned>& given, std::vector<unsigned> fallback) {
        return given.empty() ? fallback : given;
    };
    const bool all = suite == "all";
    std::vector<CheckResult> results;

    if (all || suite == "witt") {
        results.push_back(check_ghost_homomorphism(config.seed));
        results.push_back(check_frobenius_verschiebung(config.seed));
        results.push_back(check_commuting_square(config.seed));
    }
    if (all || suite == "split") {
        const auto primes = pick(config.primes, {2, 3, 5, 7});
        results.push_back(check_order_identity(*std::max_element(primes.begin(), primes.end()),
                                               config.exponents.empty() ? 8 : *std::max_element(
                                                   config.exponents.begin(), config.exponents.end()),
                                               config.r_max.value_or(10)));
        if (config.primes.empty() && config.exponents.empty() && !config.r_max)
            results.push_back(check_brute_force(config.enum_bound));
        else
            results.push_back(check_brute_force(primes, pick_e(config.exponents, {1, 2, 3, 4, 5, 6, 7, 8}),
                                                config.r_max.value_or(16), config.enum_bound));
    }
    if (all || suite == "hh") {
        const auto primes = pick(config.primes, {2, 3, 5});
        const auto es = pick_e(config.exponents, {2, 3, 4, 5, 6});
        results.push_back(check_homology_lemma(primes, es, config.m_max.value_or(10)));
        results.push_back(check_connes(primes, es, config.m_max.value_or(10)));
    }
    if (all || suite == "ss")
        results.push_back(check_spectral(pick(config.primes, {2, 3}), pick_e(config.exponents, {2, 3, 4, 6}),
                                         config.m_max.value_or(12), -10, 10, config.seed));
    if (all || suite == "equalizer")
        results.push_back(check_equalizer(pick(config.primes, {2, 3}), pick_e(config.exponents, {2, 3, 4, 6}),
                                          config.r_max.value_or(6), config.seed));
    if (all || suite == "routes") {
        std::vector<CrossCheckReport> table;
        results.push_back(check_routes(pick(config.primes, {2, 3}), pick_e(config.exponents, {2, 3, 4, 6}),
                                       config.r_max.value_or(6), config.enum_bound, config.seed, &table));
        for (const auto& row : table)
            os << "  " << row.to_string() << "\n";
    }

    bool ok = true;
    for (const auto& r : results) {
        os << r << "\n";
        ok = ok && r.pass;
    }
    return ok;
}

}  // namespace ktrunc
