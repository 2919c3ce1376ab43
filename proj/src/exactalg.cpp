#include "ktrunc/exactalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace ktrunc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long v : row)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const BigInt& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += x * b(k, j);
        }
    return out;
}

std::vector<BigInt> SmithForm::diagonal() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
        out.push_back(d(i, i));
    return out;
}

namespace {

// Row/column operations applied simultaneously to D and the matching transform.
// The inverses are updated by the transposed operations.
struct SmithWork {
    IntMatrix d, u, v, u_inv, v_inv;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t c = 0; c < d.cols(); ++c)
            std::swap(d(a, c), d(b, c));
        for (std::size_t c = 0; c < u.cols(); ++c)
            std::swap(u(a, c), u(b, c));
        for (std::size_t r = 0; r < u_inv.rows(); ++r)
            std::swap(u_inv(r, a), u_inv(r, b));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t r = 0; r < d.rows(); ++r)
            std::swap(d(r, a), d(r, b));
        for (std::size_t r = 0; r < v.rows(); ++r)
            std::swap(v(r, a), v(r, b));
        for (std::size_t c = 0; c < v_inv.cols(); ++c)
            std::swap(v_inv(a, c), v_inv(b, c));
    }
    // row[dst] -= q * row[src]
    void sub_row(std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t c = 0; c < d.cols(); ++c)
            if (d(src, c) != 0)
                d(dst, c) -= q * d(src, c);
        for (std::size_t c = 0; c < u.cols(); ++c)
            if (u(src, c) != 0)
                u(dst, c) -= q * u(src, c);
        for (std::size_t r = 0; r < u_inv.rows(); ++r)
            if (u_inv(r, dst) != 0)
                u_inv(r, src) += q * u_inv(r, dst);
    }
    // col[dst] -= q * col[src]
    void sub_col(std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t r = 0; r < d.rows(); ++r)
            if (d(r, src) != 0)
                d(r, dst) -= q * d(r, src);
        for (std::size_t r = 0; r < v.rows(); ++r)
            if (v(r, src) != 0)
                v(r, dst) -= q * v(r, src);
        for (std::size_t c = 0; c < v_inv.cols(); ++c)
            if (v_inv(dst, c) != 0)
                v_inv(src, c) += q * v_inv(dst, c);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < d.cols(); ++c)
            d(r, c) = -d(r, c);
        for (std::size_t c = 0; c < u.cols(); ++c)
            u(r, c) = -u(r, c);
        for (std::size_t i = 0; i < u_inv.rows(); ++i)
            u_inv(i, r) = -u_inv(i, r);
    }
};

// Smallest |entry| in the trailing block, ties broken by row then column.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    BigInt best;
    for (std::size_t r = t; r < d.rows(); ++r)
        for (std::size_t c = t; c < d.cols(); ++c) {
            if (d(r, c) == 0)
                continue;
            BigInt a = abs(d(r, c));
            if (!found || a < best) {
                found = true;
                best = a;
                pr = r;
                pc = c;
            }
        }
    return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), IntMatrix::identity(m.rows()),
                IntMatrix::identity(m.cols())};
    const std::size_t n = std::min(m.rows(), m.cols());
    std::size_t rank = 0;

    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(w.d, t, pr, pc))
            break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        for (;;) {
            bool dirty = false;
            // Clear column t below the pivot.
            for (std::size_t r = t + 1; r < w.d.rows(); ++r) {
                if (w.d(r, t) == 0)
                    continue;
                BigInt q = w.d(r, t) / w.d(t, t);
                w.sub_row(r, t, q);
                if (w.d(r, t) != 0)
                    dirty = true;
            }
            // Clear row t right of the pivot.
            for (std::size_t c = t + 1; c < w.d.cols(); ++c) {
                if (w.d(t, c) == 0)
                    continue;
                BigInt q = w.d(t, c) / w.d(t, t);
                w.sub_col(c, t, q);
                if (w.d(t, c) != 0)
                    dirty = true;
            }
            if (dirty) {
                // A remainder survived: move the smallest one onto the pivot.
                std::size_t br = t, bc = t;
                BigInt best = abs(w.d(t, t));
                for (std::size_t r = t + 1; r < w.d.rows(); ++r)
                    if (w.d(r, t) != 0 && abs(w.d(r, t)) < best) {
                        best = abs(w.d(r, t));
                        br = r;
                        bc = t;
                    }
                for (std::size_t c = t + 1; c < w.d.cols(); ++c)
                    if (w.d(t, c) != 0 && abs(w.d(t, c)) < best) {
                        best = abs(w.d(t, c));
                        br = t;
                        bc = c;
                    }
                w.swap_rows(t, br);
                w.swap_cols(t, bc);
                continue;
            }
            // Divisibility: fold in any row whose entries the pivot fails to divide.
            bool folded = false;
            for (std::size_t r = t + 1; r < w.d.rows() && !folded; ++r)
                for (std::size_t c = t + 1; c < w.d.cols(); ++c)
                    if (w.d(r, c) % w.d(t, t) != 0) {
                        w.sub_row(t, r, BigInt(-1));
                        folded = true;
                        break;
                    }
            if (!folded)
                break;
        }
        if (w.d(t, t) < 0)
            w.negate_row(t);
        ++rank;
    }
    return SmithForm{std::move(w.d), std::move(w.u), std::move(w.v), std::move(w.u_inv), std::move(w.v_inv), rank};
}

BigInt power(std::uint64_t base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

GroupStructure::GroupStructure(std::uint64_t p, std::vector<unsigned> exps, unsigned f)
    : prime(p), exponents(std::move(exps)), residue_degree(f) {
    if (f == 0)
        throw std::invalid_argument("GroupStructure: residue degree must be positive");
    exponents.erase(std::remove(exponents.begin(), exponents.end(), 0u), exponents.end());
    std::sort(exponents.begin(), exponents.end());
}

std::vector<BigInt> GroupStructure::factors() const {
    std::vector<BigInt> out;
    for (unsigned h : exponents)
        for (unsigned i = 0; i < residue_degree; ++i)
            out.push_back(power(prime, h));
    return out;
}

BigInt GroupStructure::order() const {
    return power(prime == 0 ? 1 : prime, length());
}

unsigned GroupStructure::length() const {
    unsigned total = 0;
    for (unsigned h : exponents)
        total += h;
    return total * residue_degree;
}

std::string GroupStructure::to_string() const {
    if (trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const BigInt& f : factors()) {
        if (!first)
            os << " + ";
        os << "Z/" << f;
        first = false;
    }
    return os.str();
}

bool operator==(const GroupStructure& a, const GroupStructure& b) {
    if (a.trivial() || b.trivial())
        return a.trivial() && b.trivial();
    return a.prime == b.prime && a.exponents == b.exponents && a.residue_degree == b.residue_degree;
}

GroupStructure group_from_invariants(std::uint64_t p, const std::vector<BigInt>& invariants) {
    std::vector<unsigned> exps;
    for (BigInt f : invariants) {
        if (f < 0)
            f = -f;
        if (f == 0)
            throw std::invalid_argument("group_from_invariants: infinite cyclic factor");
        unsigned h = 0;
        while (f % p == 0) {
            f /= p;
            ++h;
        }
        if (f != 1)
            throw std::invalid_argument("group_from_invariants: factor is not a power of " + std::to_string(p));
        exps.push_back(h);
    }
    return GroupStructure(p, std::move(exps));
}

namespace {

// Common prime of a list of prime-power moduli; 0 when every modulus is 1.
std::uint64_t common_prime(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::uint64_t p = 0;
    auto visit = [&p](const BigInt& m) {
        if (m <= 0)
            throw std::invalid_argument("kernel_invariants: moduli must be positive");
        if (m == 1)
            return;
        BigInt x = m;
        std::uint64_t q = 2;
        while (x % q != 0)
            ++q;
        if (p != 0 && q != p)
            throw std::invalid_argument("kernel_invariants: moduli are not powers of a single prime");
        p = q;
        while (x % q == 0)
            x /= q;
        if (x != 1)
            throw std::invalid_argument("kernel_invariants: modulus is not a prime power");
    };
    for (const auto& m : a)
        visit(m);
    for (const auto& m : b)
        visit(m);
    return p;
}

}  // namespace

GroupStructure kernel_invariants(const IntMatrix& relations,
                                 const std::vector<BigInt>& source_moduli,
                                 const std::vector<BigInt>& target_moduli) {
    const std::size_t n = source_moduli.size();
    const std::size_t k = target_moduli.size();
    if (relations.rows() != k || relations.cols() != n)
        throw std::invalid_argument("kernel_invariants: relation matrix is " + std::to_string(relations.rows()) + "x" +
                                    std::to_string(relations.cols()) + ", moduli imply " + std::to_string(k) + "x" +
                                    std::to_string(n));
    const std::uint64_t p = common_prime(source_moduli, target_moduli);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((relations(i, j) * source_moduli[j]) % target_moduli[i] != 0)
                throw std::invalid_argument("kernel_invariants: relation is not well defined on the source");
    if (p == 0 || n == 0)
        return GroupStructure(p, {});

    // L = { x in Z^n : R x in prod target_i Z }, read off the integer kernel of [R | diag(T)].
    IntMatrix a(k, n + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = relations(i, j);
        a(i, n + i) = target_moduli[i];
    }
    const SmithForm sa = smith_normal_form(a);
    const std::size_t kernel_dim = n + k - sa.rank;

    IntMatrix gens(n, kernel_dim + n);
    for (std::size_t c = 0; c < kernel_dim; ++c)
        for (std::size_t r = 0; r < n; ++r)
            gens(r, c) = sa.v(r, sa.rank + c);
    for (std::size_t j = 0; j < n; ++j)
        gens(j, kernel_dim + j) = source_moduli[j];

    // Basis of L is U^{-1} diag(d); express the source relations diag(S) in it.
    const SmithForm sg = smith_normal_form(gens);
    if (sg.rank != n)
        throw VerificationError("kernel_invariants: kernel lattice is not of full rank");
    IntMatrix coords(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const BigInt& dr = sg.d(r, r);
        for (std::size_t c = 0; c < n; ++c) {
            BigInt x = sg.u(r, c) * source_moduli[c];
            if (x % dr != 0)
                throw VerificationError("kernel_invariants: inexact division expressing source relations");
            coords(r, c) = x / dr;
        }
    }
    const SmithForm sq = smith_normal_form(coords);
    return group_from_invariants(p, sq.diagonal());
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid on signed 128-bit values.
    __int128 t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        __int128 q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1)
        throw std::invalid_argument("inverse_mod: not invertible");
    if (t < 0)
        t += p;
    return static_cast<std::uint64_t>(t);
}

FpMatrix FpMatrix::reduce(const IntMatrix& m, std::uint64_t p) {
    FpMatrix out(m.rows(), m.cols(), p);
    const BigInt bp(p);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            BigInt x = m(r, c) % bp;
            if (x < 0)
                x += bp;
            out(r, c) = static_cast<std::uint64_t>(x);
        }
    return out;
}

void FpMatrix::add(std::size_t r, std::size_t c, long long value) {
    long long m = value % static_cast<long long>(p_);
    if (m < 0)
        m += static_cast<long long>(p_);
    auto& x = (*this)(r, c);
    x = (x + static_cast<std::uint64_t>(m)) % p_;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t x) { return x == 0; });
}

FpMatrix FpMatrix::rref(std::vector<std::size_t>* pivots) const {
    FpMatrix a = *this;
    std::size_t row = 0;
    if (pivots)
        pivots->clear();
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && a(sel, col) == 0)
            ++sel;
        if (sel == rows_)
            continue;
        if (sel != row)
            for (std::size_t c = 0; c < cols_; ++c)
                std::swap(a(sel, c), a(row, c));
        const std::uint64_t inv = inverse_mod(a(row, col), p_);
        for (std::size_t c = col; c < cols_; ++c)
            a(row, c) = a(row, c) * inv % p_;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || a(r, col) == 0)
                continue;
            const std::uint64_t f = a(r, col);
            for (std::size_t c = col; c < cols_; ++c)
                a(r, c) = (a(r, c) + (p_ - f) * a(row, c)) % p_;
        }
        if (pivots)
            pivots->push_back(col);
        ++row;
    }
    return a;
}

std::size_t FpMatrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

FpMatrix FpMatrix::kernel_basis() const {
    std::vector<std::size_t> piv;
    const FpMatrix a = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv)
        is_pivot[c] = true;
    FpMatrix basis(cols_, cols_ - piv.size(), p_);
    std::size_t k = 0;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free])
            continue;
        basis(free, k) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            basis(piv[i], k) = (p_ - a(i, free)) % p_;
        ++k;
    }
    return basis;
}

FpMatrix FpMatrix::hconcat(const FpMatrix& other) const {
    if (rows_ != other.rows_)
        throw std::invalid_argument("FpMatrix: row mismatch in hconcat");
    FpMatrix out(rows_, cols_ + other.cols_, p_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            out(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c)
            out(r, cols_ + c) = other(r, c);
    }
    return out;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() != b.rows() || a.prime() != b.prime())
        throw std::invalid_argument("FpMatrix: incompatible product");
    FpMatrix out(a.rows(), b.cols(), a.prime());
    const std::uint64_t p = a.prime();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint64_t x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) = (out(i, j) + x * b(k, j)) % p;
        }
    return out;
}

std::size_t fp_homology(const FpMatrix& boundary_out, const FpMatrix& boundary_in) {
    if (boundary_out.cols() != boundary_in.rows())
        throw std::invalid_argument("fp_homology: boundary maps do not share a middle term");
    if (!(boundary_out * boundary_in).is_zero())
        throw std::invalid_argument("fp_homology: not a complex");
    const std::size_t middle = boundary_out.cols();
    return middle - boundary_out.rank() - boundary_in.rank();
}

std::size_t fp_homology(const IntMatrix& boundary_out, const IntMatrix& boundary_in, std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("fp_homology: modulus is not prime");
    return fp_homology(FpMatrix::reduce(boundary_out, p), FpMatrix::reduce(boundary_in, p));
}

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

unsigned valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0)
        throw std::invalid_argument("valuation: zero has infinite valuation");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace ktrunc
