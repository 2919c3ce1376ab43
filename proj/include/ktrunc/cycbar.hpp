#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "ktrunc/exactalg.hpp"

namespace ktrunc {

/// Simplex pi_0 ^ ... ^ pi_n of the cyclic bar construction of
/// {0, 1, x, ..., x^{e-1}}, stored as the exponents of x (0 is the unit 1;
/// the basepoint 0 is never stored).
struct CyclicWord {
    std::vector<unsigned> exponents;

    std::size_t degree() const { return exponents.size() - 1; }
    unsigned weight() const;
    /// No unit in positions 1..n.
    bool nondegenerate() const;
    std::string to_string() const;

    friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;
};

/// floor((m - 1) / e), the degree offset of the homology of the weight-m part.
inline unsigned d_function(unsigned e, unsigned m) { return m == 0 ? 0 : (m - 1) / e; }

/// Normalized chain complex of the weight-m summand with its boundary and
/// Connes operators. Integral matrices are kept alongside their reductions
/// mod p so that integral homology generators are available.
class NormalizedComplex {
public:
    unsigned e() const { return e_; }
    unsigned m() const { return m_; }
    std::uint64_t p() const { return p_; }
    /// Degrees 0..m carry basis elements; degree m + 1 is always empty.
    std::size_t top_degree() const { return m_ + 1; }
    const std::vector<CyclicWord>& basis(std::size_t n) const;
    std::size_t dim(std::size_t n) const { return n < basis_.size() ? basis_[n].size() : 0; }

    /// Integral boundary C_n -> C_{n-1} (zero-row matrix for n = 0).
    const IntMatrix& boundary(std::size_t n) const { return boundary_.at(n); }
    /// Integral Connes operator C_n -> C_{n+1}.
    const IntMatrix& connes(std::size_t n) const { return connes_.at(n); }
    FpMatrix boundary_fp(std::size_t n) const { return FpMatrix::reduce(boundary(n), p_); }
    FpMatrix connes_fp(std::size_t n) const { return FpMatrix::reduce(connes(n), p_); }

    /// Checks bb = 0, BB = 0 and bB + Bb = 0 over the integers; throws
    /// VerificationError naming the failing identity.
    void verify_identities() const;

private:
    friend NormalizedComplex generate_complex(unsigned e, unsigned m, std::uint64_t p);
    unsigned e_ = 2;
    unsigned m_ = 1;
    std::uint64_t p_ = 2;
    std::vector<std::vector<CyclicWord>> basis_;  // degrees 0..m+2, the last two empty
    std::vector<IntMatrix> boundary_;             // index n <= m+2: C_n -> C_{n-1}
    std::vector<IntMatrix> connes_;               // index n <= m+1: C_n -> C_{n+1}
};

/// Builds the weight-m complex (boundary and Connes matrices) and verifies
/// the mixed-complex identities.
NormalizedComplex generate_complex(unsigned e, unsigned m, std::uint64_t p);

struct HomologySummary {
    unsigned e = 2;
    unsigned m = 1;
    std::uint64_t p = 2;
    unsigned d = 0;
    /// F_p-rank of reduced homology in degrees 0..m+1.
    std::vector<std::size_t> ranks;
    /// Lowest and highest degree with nonzero homology, if any.
    std::optional<std::size_t> low_degree;
    /// Integral scalar c with B(y) = c z + boundary for integral generators
    /// y in degree 2d and z in degree 2d+1 (only when e does not divide m).
    std::optional<BigInt> integral_connes;
    /// The induced Connes map between the two nonzero degrees, as a scalar in
    /// F_p w.r.t. the chosen homology bases (integral_connes mod p when e !| m).
    std::optional<std::uint64_t> connes_scalar;
    /// Rank over F_p of the induced Connes map on homology (basis free).
    std::size_t connes_rank = 0;

    std::size_t rank(std::size_t n) const { return n < ranks.size() ? ranks[n] : 0; }
};

HomologySummary reduced_homology(const NormalizedComplex& c);

/// Ranks of the weight-m part of the two-periodic small complex
/// A <-0- A <-f'- A <-0- ... for A = k[x]/(x^e), f' = e x^{e-1}.
std::vector<std::size_t> small_complex_hh(unsigned e, unsigned m, std::uint64_t p);

/// Closed-form ranks: one in degrees 2d, 2d+1 when e !| m; one in 2d+1, 2d+2
/// when e | m and p | e; zero otherwise. Indexed by degree 0..m+1.
std::vector<std::size_t> predicted_ranks(unsigned e, unsigned m, std::uint64_t p);

/// Plain-text listing: '#'-prefixed basis lines per degree followed by
/// "deg src_index dst_index value" lines for each nonzero boundary entry
/// (section "boundary") and Connes entry (section "connes").
void write_complex(std::ostream& os, const NormalizedComplex& c);

}  // namespace ktrunc
