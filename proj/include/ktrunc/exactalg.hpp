#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ktrunc {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a cross-check between two independent routes fails, or when an
/// internal identity that must hold exactly does not.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense matrix with arbitrary-precision integer entries, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    IntMatrix transpose() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// U * M * V = D with D diagonal, nonnegative, and d_1 | d_2 | ... on the
/// leading diagonal. U and V are unimodular.
struct SmithForm {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    IntMatrix u_inv;
    IntMatrix v_inv;
    std::size_t rank = 0;

    std::vector<BigInt> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Finite abelian p-group as sorted exponents h_1 <= ... <= h_k, each factor
/// standing for Z/p^h. A residue degree f > 1 means each factor occurs f
/// times (W_h over F_{p^f}); the exponent list itself is stored once.
struct GroupStructure {
    std::uint64_t prime = 0;
    std::vector<unsigned> exponents;
    unsigned residue_degree = 1;

    GroupStructure() = default;
    GroupStructure(std::uint64_t p, std::vector<unsigned> exps, unsigned f = 1);

    bool trivial() const { return exponents.empty(); }
    /// Invariant factors p^h, each repeated residue_degree times, ascending.
    std::vector<BigInt> factors() const;
    BigInt order() const;
    /// Sum of exponents times residue degree (log_p of the order).
    unsigned length() const;
    std::string to_string() const;

    friend bool operator==(const GroupStructure& a, const GroupStructure& b);
};

/// Exponent list of a single prime from arbitrary positive invariant factors;
/// factors equal to one are dropped. Throws if a factor is not a power of p.
GroupStructure group_from_invariants(std::uint64_t p, const std::vector<BigInt>& invariants);

/// Kernel of the homomorphism prod Z/source_moduli[j] -> prod Z/target_moduli[i]
/// given by `relations` (rows index the target, columns the source). All
/// moduli must be powers of one prime.
GroupStructure kernel_invariants(const IntMatrix& relations,
                                 const std::vector<BigInt>& source_moduli,
                                 const std::vector<BigInt>& target_moduli);

/// Dense matrix over F_p with p < 2^32.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t p) : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}
    static FpMatrix reduce(const IntMatrix& m, std::uint64_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t prime() const { return p_; }

    std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Adds a (possibly negative) integer to an entry, reducing mod p.
    void add(std::size_t r, std::size_t c, long long value);

    bool is_zero() const;
    std::size_t rank() const;
    /// Basis of the null space, one vector per column of the result.
    FpMatrix kernel_basis() const;
    /// Reduced row echelon form; pivots are reported in ascending column order.
    FpMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    /// Horizontal concatenation [this | other].
    FpMatrix hconcat(const FpMatrix& other) const;

    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::uint64_t p_ = 2;
    std::vector<std::uint64_t> data_;
};

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);

/// dim ker(boundary_out) - rank(boundary_in) over F_p. boundary_out maps the
/// middle term down, boundary_in maps into it. Throws std::invalid_argument
/// ("not a complex") if the composite is nonzero mod p.
std::size_t fp_homology(const IntMatrix& boundary_out, const IntMatrix& boundary_in, std::uint64_t p);
std::size_t fp_homology(const FpMatrix& boundary_out, const FpMatrix& boundary_in);

bool is_prime(std::uint64_t n);
/// p-adic valuation of a nonzero integer.
unsigned valuation(std::uint64_t n, std::uint64_t p);
BigInt power(std::uint64_t base, unsigned exp);

}  // namespace ktrunc
