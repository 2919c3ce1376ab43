#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ktrunc/tcassemble.hpp"
#include "ktrunc/wittsplit.hpp"

namespace ktrunc {

struct CheckResult {
    CheckResult() = default;
    explicit CheckResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    std::size_t cases = 0;
    std::string detail;  // first failure, or a summary

    void fail(const std::string& why);
};

std::ostream& operator<<(std::ostream& os, const CheckResult& r);

/// Parameter overrides; unset fields fall back to the default grids.
struct VerifyConfig {
    std::uint64_t seed = 0;
    std::uint64_t enum_bound = kDefaultEnumBound;
    std::vector<std::uint64_t> primes;
    std::vector<unsigned> exponents;
    std::optional<std::uint64_t> r_max;
    std::optional<unsigned> m_max;
};

CheckResult check_ghost_homomorphism(std::uint64_t seed, std::size_t pairs = 200, std::uint64_t length = 8);
/// F_d V_d = d on W_n(Z) and W_n(F_p) for d <= d_max.
CheckResult check_frobenius_verschiebung(std::uint64_t seed, std::uint64_t d_max = 4, std::size_t trials = 25);
/// I_{m'}(V_e a) = e' V_{p^u}(I_d a) when m' = e' d, and 0 when e' !| m'.
CheckResult check_commuting_square(std::uint64_t seed, std::size_t trials = 100);

/// sum_{m'} h(p, r, e, m') = r(e - 1).
CheckResult check_order_identity(std::uint64_t p_max = 7, std::uint64_t e_max = 8, std::uint64_t r_max = 10);
/// Enumerated quotients against the h-product for every (p, r, e) with
/// p^{re} within the bound. Single-coordinate cases (r = e = 1) are only
/// enumerated for p <= 256.
CheckResult check_brute_force(std::uint64_t enum_bound = kDefaultEnumBound);
CheckResult check_brute_force(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                              std::uint64_t r_max, std::uint64_t enum_bound);

/// Bar complex homology against the closed form and the small complex.
CheckResult check_homology_lemma(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                                 unsigned m_max);
/// Integral Connes scalar is +-m when e !| m; induced map zero when e | m.
CheckResult check_connes(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                         unsigned m_max);
/// E^infinity counts in total degrees [lo, hi] against closed_form, in both
/// modes, also with randomized units in every pattern.
CheckResult check_spectral(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                           unsigned m_max, long long lo, long long hi, std::uint64_t seed);

/// Equalizer kernels under `seeds` random unit choices and truncations
/// s+u+2 .. s+u+6.
CheckResult check_equalizer(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                            std::uint64_t r_max, std::uint64_t seed, std::size_t seeds = 20);
/// Routes A, B, C agree and even degrees are trivial. Rows are appended to
/// `table` when given.
CheckResult check_routes(const std::vector<std::uint64_t>& primes, const std::vector<unsigned>& exponents,
                         std::uint64_t r_max, std::uint64_t enum_bound, std::uint64_t seed,
                         std::vector<CrossCheckReport>* table = nullptr);

/// Suites: witt, split, hh, ss, equalizer, routes, all. Prints one line per
/// check and returns whether all passed. Throws std::invalid_argument for an
/// unknown suite name.
bool run_suite(const std::string& suite, const VerifyConfig& config, std::ostream& os);

const std::vector<std::string>& suite_names();

}  // namespace ktrunc
