#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ktrunc/exactalg.hpp"

namespace ktrunc {

/// Finite set of positive integers closed under taking divisors.
class TruncationSet {
public:
    /// {1, 2, ..., n}; the big Witt vectors W_n.
    static TruncationSet big(std::uint64_t n);
    /// {1, p, ..., p^{s-1}}; the p-typical Witt vectors W_s.
    static TruncationSet p_typical(std::uint64_t p, unsigned s);
    /// Any divisor-closed set. Throws std::invalid_argument otherwise.
    static TruncationSet from_elements(std::vector<std::uint64_t> elements);

    const std::vector<std::uint64_t>& elements() const { return impl_->elements; }
    std::size_t size() const { return impl_->elements.size(); }
    bool empty() const { return impl_->elements.empty(); }
    bool contains(std::uint64_t n) const { return index_of(n).has_value(); }
    std::optional<std::size_t> index_of(std::uint64_t n) const;
    /// Indices (into elements()) of the divisors of the element at index i, ascending.
    const std::vector<std::size_t>& divisors_of(std::size_t i) const { return impl_->divisors[i]; }
    /// {n : d*n in S}
    TruncationSet divide(std::uint64_t d) const;
    bool is_subset_of(const TruncationSet& other) const;

    friend bool operator==(const TruncationSet& a, const TruncationSet& b) {
        return a.impl_ == b.impl_ || a.elements() == b.elements();
    }

private:
    struct Impl {
        std::vector<std::uint64_t> elements;
        std::vector<std::vector<std::size_t>> divisors;
    };
    explicit TruncationSet(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static TruncationSet build(std::vector<std::uint64_t> sorted);

    std::shared_ptr<const Impl> impl_;
};

/// Coefficient ring: the integers (prime == 0) or F_p.
struct CoeffRing {
    std::uint64_t prime = 0;

    static CoeffRing integers() { return {0}; }
    static CoeffRing fp(std::uint64_t p) { return {p}; }
    bool is_integers() const { return prime == 0; }
    friend bool operator==(CoeffRing, CoeffRing) = default;
};

/// Witt vector with coordinates a_n for n in a truncation set. Coordinates
/// over F_p are kept as representatives in [0, p).
class WittVector {
public:
    WittVector(TruncationSet truncation, CoeffRing ring);
    WittVector(TruncationSet truncation, CoeffRing ring, std::vector<BigInt> coords);

    static WittVector zero(TruncationSet truncation, CoeffRing ring) { return WittVector(std::move(truncation), ring); }
    static WittVector one(TruncationSet truncation, CoeffRing ring);

    const TruncationSet& truncation() const { return truncation_; }
    CoeffRing ring() const { return ring_; }
    const std::vector<BigInt>& coords() const { return coords_; }
    /// Coordinate a_n; throws if n is not in the truncation set.
    const BigInt& operator[](std::uint64_t n) const;

    friend bool operator==(const WittVector& a, const WittVector& b) {
        return a.ring_ == b.ring_ && a.truncation_ == b.truncation_ && a.coords_ == b.coords_;
    }

private:
    TruncationSet truncation_;
    CoeffRing ring_;
    std::vector<BigInt> coords_;
};

/// w_n = sum_{d | n} d * a_d^{n/d}. Integer coefficients only.
BigInt ghost(const WittVector& a, std::uint64_t n);
std::vector<BigInt> ghost_vector(const WittVector& a);
/// Inverse of the ghost map over the integers. Throws VerificationError when
/// the recursion hits a non-exact division (the ghost vector is not integral).
WittVector from_ghost(const TruncationSet& truncation, const std::vector<BigInt>& ghosts);

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
/// The integer multiple n * a in the Witt ring.
WittVector witt_scale(const BigInt& n, const WittVector& a);

/// (V_e a)_n = a_{n/e} if e | n, else 0, placed in the target truncation.
WittVector verschiebung(std::uint64_t e, const WittVector& a, const TruncationSet& target);
/// Frobenius with ghost(F_d a)_n = ghost(a)_{dn} on {n : dn in S}.
WittVector frobenius(std::uint64_t d, const WittVector& a);
/// Coordinate projection onto a divisor-closed subset.
WittVector restrict(const WittVector& a, const TruncationSet& subset);

/// Coordinatewise reduction W(Z) -> W(F_p).
WittVector reduce_mod(const WittVector& a, std::uint64_t p);
/// Representatives in [0, p) viewed as an integral Witt vector.
WittVector lift(const WittVector& a);

/// Number of elements of W_S(F_p), i.e. p^{|S|}.
BigInt fp_cardinality(const TruncationSet& s, std::uint64_t p);

}  // namespace ktrunc
