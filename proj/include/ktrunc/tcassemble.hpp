#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ktrunc/exactalg.hpp"
#include "ktrunc/wittsplit.hpp"

namespace ktrunc {

/// Finite truncation of the tower of congruences can_v(a_v) = phi_v(a_{v-1})
/// for v = 0..V, with a_v in Z/p^{c_v} and both sides in Z/p^{t_v}. The index
/// v stands for the weight p^v m'. There is no phi into index 0.
struct EqualizerModel {
    std::uint64_t p = 2;
    std::vector<unsigned> source_lengths;  // c_v, from the homotopy fixed points
    std::vector<unsigned> target_lengths;  // t_v, from the Tate construction
    std::vector<std::uint64_t> units;      // unit scaling phi_v; units[0] unused

    std::size_t size() const { return source_lengths.size(); }
    /// Rows: equations in Z/p^{t_v}; columns: unknowns a_v.
    IntMatrix relations() const;
    GroupStructure kernel() const;
};

/// Default truncation s + u + 2 with s = s(p, re, m').
unsigned default_truncation(const SplitParams& params, std::uint64_t m_prime);

/// Lengths for the weight classes p^v m' in degree 2r-1, units drawn from the
/// seed (all ones when p = 2).
EqualizerModel equalizer_model(const SplitParams& params, std::uint64_t m_prime, unsigned truncation,
                               std::uint64_t seed);

struct TcOptions {
    std::uint64_t seed = 0;
    std::optional<unsigned> truncation;
};

/// The weight-m' summand of TC_{2r-1}: a single factor p^h, found both by the
/// case analysis and by the kernel of the equalizer model. Throws
/// VerificationError with both answers if they differ.
GroupStructure tc_weight_group(std::uint64_t p, std::uint64_t e, std::uint64_t r, std::uint64_t m_prime,
                               const TcOptions& options = {});

/// TC_{2r-1}(k[x]/(x^e), (x)) for k of degree f over F_p.
GroupStructure tc_groups(std::uint64_t p, std::uint64_t e, std::uint64_t r, unsigned f = 1,
                         const TcOptions& options = {});

/// Relative TC in an arbitrary degree n >= 1; even degrees are trivial.
GroupStructure tc_in_degree(std::uint64_t p, std::uint64_t e, std::uint64_t n, unsigned f = 1,
                            const TcOptions& options = {});

/// K_{2r-1}(k[x]/(x^e), (x)), identified with relative TC.
GroupStructure k_groups(std::uint64_t p, std::uint64_t e, std::uint64_t r, unsigned f = 1,
                        const TcOptions& options = {});

struct CrossCheckReport {
    std::uint64_t p = 2;
    std::uint64_t e = 2;
    std::uint64_t r = 1;
    std::optional<GroupStructure> brute_force;  // route A
    GroupStructure predicted;                   // route B
    GroupStructure assembled;                   // route C
    std::string note;
    bool pass = false;

    std::string to_string() const;
};

CrossCheckReport cross_check(std::uint64_t p, std::uint64_t e, std::uint64_t r,
                             std::uint64_t enum_bound = kDefaultEnumBound, std::uint64_t seed = 0);

}  // namespace ktrunc
