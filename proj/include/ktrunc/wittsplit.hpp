#pragma once

#include <cstdint>

#include "ktrunc/exactalg.hpp"
#include "ktrunc/witt.hpp"

namespace ktrunc {

/// Default cap on |W_{re}(F_p)| for the enumeration routes.
inline constexpr std::uint64_t kDefaultEnumBound = std::uint64_t{1} << 16;

/// (p, r, e) with e = p^u * e_prime, gcd(p, e_prime) = 1.
struct SplitParams {
    std::uint64_t p = 2;
    std::uint64_t r = 1;
    std::uint64_t e = 1;
    unsigned u = 0;
    std::uint64_t e_prime = 1;

    static SplitParams make(std::uint64_t p, std::uint64_t r, std::uint64_t e);
};

/// The unique s >= 1 with p^{s-1} d <= r < p^s d, or 0 when d > r.
unsigned s_function(std::uint64_t p, std::uint64_t r, std::uint64_t d);

/// Length of the W_h factor indexed by m' (p must not divide m').
unsigned h_function(const SplitParams& params, std::uint64_t m_prime);

/// prod_{1 <= m' <= re, p !| m'} W_{h(m')}.
GroupStructure predicted_quotient(const SplitParams& params);

/// Invariant factors of W_{re}(F_p) / V_e W_r(F_p) found by enumerating the
/// group under witt_add and measuring coset orders. Independent of any Smith
/// normal form. Throws std::invalid_argument if p^{re} exceeds the bound.
GroupStructure brute_force_quotient(const SplitParams& params, std::uint64_t enum_bound = kDefaultEnumBound);

/// The component I_d = R o F_d : W_r -> W_s with s = s(p, r, d), where r is
/// the size of the big truncation set {1..r} carrying a.
WittVector witt_component(const WittVector& a, std::uint64_t p, std::uint64_t d);

}  // namespace ktrunc
