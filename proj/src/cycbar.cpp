#include "ktrunc/cycbar.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace ktrunc {

unsigned CyclicWord::weight() const {
    unsigned w = 0;
    for (unsigned x : exponents)
        w += x;
    return w;
}

bool CyclicWord::nondegenerate() const {
    return std::all_of(exponents.begin() + 1, exponents.end(), [](unsigned x) { return x != 0; });
}

std::string CyclicWord::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (i)
            os << ',';
        if (exponents[i] == 0)
            os << '1';
        else if (exponents[i] == 1)
            os << 'x';
        else
            os << "x^" << exponents[i];
    }
    os << ')';
    return os.str();
}

const std::vector<CyclicWord>& NormalizedComplex::basis(std::size_t n) const {
    static const std::vector<CyclicWord> empty;
    return n < basis_.size() ? basis_[n] : empty;
}

namespace {

// All nondegenerate words of degree n and weight m, lexicographic order.
void enumerate_words(unsigned e, unsigned m, std::size_t n, std::vector<CyclicWord>& out) {
    std::vector<unsigned> w(n + 1, 0);
    auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
        if (pos == n + 1) {
            if (remaining == 0)
                out.push_back(CyclicWord{w});
            return;
        }
        const unsigned lo = pos == 0 ? 0 : 1;
        // Remaining positions each need at least one unit of weight.
        const unsigned need_after = static_cast<unsigned>(n - pos);
        for (unsigned x = lo; x <= e - 1 && x <= remaining; ++x) {
            if (remaining - x < need_after)
                break;
            w[pos] = x;
            self(self, pos + 1, remaining - x);
        }
    };
    rec(rec, 0, m);
}

std::size_t index_in(const std::vector<CyclicWord>& basis, const CyclicWord& w) {
    auto it = std::lower_bound(basis.begin(), basis.end(), w);
    if (it == basis.end() || *it != w)
        throw VerificationError("cycbar: face " + w.to_string() + " missing from basis");
    return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace

NormalizedComplex generate_complex(unsigned e, unsigned m, std::uint64_t p) {
    if (e < 2)
        throw std::invalid_argument("generate_complex: e must be at least 2");
    if (m < 1)
        throw std::invalid_argument("generate_complex: m must be positive");
    if (!is_prime(p))
        throw std::invalid_argument("generate_complex: p must be prime");

    NormalizedComplex c;
    c.e_ = e;
    c.m_ = m;
    c.p_ = p;
    c.basis_.resize(m + 3);
    for (std::size_t n = 0; n <= m; ++n)
        enumerate_words(e, m, n, c.basis_[n]);

    c.boundary_.resize(m + 3);
    c.connes_.resize(m + 2);
    c.boundary_[0] = IntMatrix(0, c.dim(0));
    for (std::size_t n = 1; n <= m + 2; ++n) {
        IntMatrix bd(c.dim(n - 1), c.dim(n));
        for (std::size_t j = 0; j < c.dim(n); ++j) {
            const auto& w = c.basis_[n][j].exponents;
            for (std::size_t i = 0; i <= n; ++i) {
                std::vector<unsigned> face;
                face.reserve(n);
                if (i < n) {
                    face.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                    face.push_back(w[i] + w[i + 1]);
                    face.insert(face.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
                } else {
                    face.push_back(w[n] + w[0]);
                    face.insert(face.end(), w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(n));
                }
                if (face.front() >= e || std::any_of(face.begin(), face.end(), [e](unsigned x) { return x >= e; }))
                    continue;  // x^e = 0 is the basepoint
                CyclicWord fw{std::move(face)};
                if (!fw.nondegenerate())
                    continue;
                bd(index_in(c.basis_[n - 1], fw), j) += (i % 2 == 0) ? 1 : -1;
            }
        }
        c.boundary_[n] = std::move(bd);
    }

    // B(a_0..a_n) = sum_i (-1)^{ni} (1, a_i, .., a_n, a_0, .., a_{i-1}); zero when a_0 = 1.
    for (std::size_t n = 0; n <= m + 1; ++n) {
        IntMatrix b(c.dim(n + 1), c.dim(n));
        for (std::size_t j = 0; j < c.dim(n); ++j) {
            const auto& w = c.basis_[n][j].exponents;
            if (w[0] == 0)
                continue;
            for (std::size_t i = 0; i <= n; ++i) {
                std::vector<unsigned> t{0};
                t.insert(t.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
                t.insert(t.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                const long long sign = ((n * i) % 2 == 0) ? 1 : -1;
                b(index_in(c.basis_[n + 1], CyclicWord{std::move(t)}), j) += sign;
            }
        }
        c.connes_[n] = std::move(b);
    }
    c.verify_identities();
    return c;
}

void NormalizedComplex::verify_identities() const {
    const std::string tag = " (e=" + std::to_string(e_) + ", m=" + std::to_string(m_) + ")";
    for (std::size_t n = 2; n <= m_ + 1; ++n)
        if (!(boundary_[n - 1] * boundary_[n]).is_zero())
            throw VerificationError("cycbar: boundary squares to nonzero in degree " + std::to_string(n) + tag);
    for (std::size_t n = 0; n + 1 <= m_ + 1; ++n)
        if (!(connes_[n + 1] * connes_[n]).is_zero())
            throw VerificationError("cycbar: Connes operator squares to nonzero in degree " + std::to_string(n) + tag);
    for (std::size_t n = 0; n <= m_; ++n) {
        // bB + Bb : C_n -> C_n
        IntMatrix lhs = boundary_[n + 1] * connes_[n];
        if (n >= 1) {
            const IntMatrix rhs = connes_[n - 1] * boundary_[n];
            for (std::size_t r = 0; r < lhs.rows(); ++r)
                for (std::size_t col = 0; col < lhs.cols(); ++col)
                    lhs(r, col) += rhs(r, col);
        }
        if (!lhs.is_zero())
            throw VerificationError("cycbar: bB + Bb is nonzero in degree " + std::to_string(n) + tag);
    }
}

namespace {

// Homology basis of a degree over F_p, as cycle representatives (columns).
struct FpHomologyBasis {
    FpMatrix image;  // boundaries into this degree
    FpMatrix reps;   // chosen cycle representatives

    // Coordinates of a cycle with respect to reps, modulo boundaries.
    std::vector<std::uint64_t> coordinates(const FpMatrix& cycle) const {
        const FpMatrix aug = image.hconcat(reps).hconcat(cycle);
        std::vector<std::size_t> piv;
        const FpMatrix r = aug.rref(&piv);
        const std::size_t last = aug.cols() - 1;
        if (!piv.empty() && piv.back() == last)
            throw VerificationError("cycbar: vector is not a cycle modulo boundaries");
        std::vector<std::uint64_t> coords(reps.cols(), 0);
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (piv[i] >= image.cols())
                coords[piv[i] - image.cols()] = r(i, last);
        return coords;
    }
};

FpHomologyBasis fp_homology_basis(const FpMatrix& out, const FpMatrix& in) {
    const FpMatrix kernel = out.kernel_basis();
    const FpMatrix joined = in.hconcat(kernel);
    std::vector<std::size_t> piv;
    joined.rref(&piv);
    std::vector<std::size_t> chosen;
    for (std::size_t c : piv)
        if (c >= in.cols())
            chosen.push_back(c - in.cols());
    FpMatrix reps(kernel.rows(), chosen.size(), out.prime());
    for (std::size_t k = 0; k < chosen.size(); ++k)
        for (std::size_t r = 0; r < kernel.rows(); ++r)
            reps(r, k) = kernel(r, chosen[k]);
    return {in, reps};
}

// Integral generator g of H_n = Z together with a functional lambda on the
// chains with lambda(g) = 1 and lambda vanishing on boundaries.
struct IntegralGenerator {
    std::vector<BigInt> cycle;
    std::vector<BigInt> functional;
};

IntegralGenerator integral_generator(const IntMatrix& out, const IntMatrix& in) {
    const std::size_t dim = out.cols();
    const SmithForm so = smith_normal_form(out);
    const std::size_t k = dim - so.rank;  // rank of the cycle lattice
    // Kernel coordinates of the boundaries: rows rank.. of V^{-1} * in.
    IntMatrix x(k, in.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < in.cols(); ++j) {
            BigInt s = 0;
            for (std::size_t t = 0; t < dim; ++t)
                s += so.v_inv(so.rank + i, t) * in(t, j);
            x(i, j) = s;
        }
    const SmithForm sx = smith_normal_form(x);
    if (k != sx.rank + 1)
        throw VerificationError("cycbar: integral homology is not of rank one");
    for (std::size_t i = 0; i < sx.rank; ++i)
        if (sx.d(i, i) != 1)
            throw VerificationError("cycbar: integral homology has torsion");
    const std::size_t free = sx.rank;

    IntegralGenerator g;
    g.cycle.assign(dim, 0);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t i = 0; i < k; ++i)
            g.cycle[r] += so.v(r, so.rank + i) * sx.u_inv(i, free);
    g.functional.assign(dim, 0);
    for (std::size_t t = 0; t < dim; ++t)
        for (std::size_t i = 0; i < k; ++i)
            g.functional[t] += sx.u(free, i) * so.v_inv(so.rank + i, t);

    auto lead = std::find_if(g.cycle.begin(), g.cycle.end(), [](const BigInt& v) { return v != 0; });
    if (lead != g.cycle.end() && *lead < 0) {
        for (auto& v : g.cycle)
            v = -v;
        for (auto& v : g.functional)
            v = -v;
    }
    return g;
}

}  // namespace

HomologySummary reduced_homology(const NormalizedComplex& c) {
    HomologySummary h;
    h.e = c.e();
    h.m = c.m();
    h.p = c.p();
    h.d = d_function(c.e(), c.m());
    const std::size_t top = c.top_degree();
    h.ranks.assign(top + 1, 0);
    for (std::size_t n = 0; n <= top; ++n) {
        h.ranks[n] = fp_homology(c.boundary_fp(n), c.boundary_fp(n + 1));
        if (h.ranks[n] != 0 && !h.low_degree)
            h.low_degree = n;
    }
    if (!h.low_degree)
        return h;

    // The induced Connes map from the lowest nonzero degree to the next.
    const std::size_t lo = *h.low_degree;
    if (lo + 1 <= top && h.ranks[lo + 1] != 0) {
        const FpHomologyBasis src = fp_homology_basis(c.boundary_fp(lo), c.boundary_fp(lo + 1));
        const FpHomologyBasis dst = fp_homology_basis(c.boundary_fp(lo + 1), c.boundary_fp(lo + 2));
        const FpMatrix images = c.connes_fp(lo) * src.reps;
        const FpMatrix joined = dst.image.hconcat(images);
        h.connes_rank = joined.rank() - dst.image.rank();
        if (src.reps.cols() == 1 && dst.reps.cols() == 1)
            h.connes_scalar = dst.coordinates(images)[0];
    }
    if (c.m() % c.e() != 0) {
        const std::size_t n = 2 * h.d;
        const IntegralGenerator y = integral_generator(c.boundary(n), c.boundary(n + 1));
        const IntegralGenerator z = integral_generator(c.boundary(n + 1), c.boundary(n + 2));
        const IntMatrix& b = c.connes(n);
        BigInt scalar = 0;
        for (std::size_t r = 0; r < b.rows(); ++r) {
            BigInt by = 0;
            for (std::size_t j = 0; j < b.cols(); ++j)
                by += b(r, j) * y.cycle[j];
            scalar += z.functional[r] * by;
        }
        h.integral_connes = scalar;
        BigInt red = scalar % BigInt(c.p());
        if (red < 0)
            red += c.p();
        h.connes_scalar = static_cast<std::uint64_t>(red);
    }
    return h;
}

std::vector<std::size_t> small_complex_hh(unsigned e, unsigned m, std::uint64_t p) {
    if (e < 2)
        throw std::invalid_argument("small_complex_hh: e must be at least 2");
    if (!is_prime(p))
        throw std::invalid_argument("small_complex_hh: p must be prime");
    // Weight-m slot of each degree: x^{m - je} in degree 2j, x^{m - je - 1} in 2j+1.
    auto slot = [e, m](std::size_t deg) -> std::optional<unsigned> {
        const long long j = static_cast<long long>(deg / 2);
        const long long ex = static_cast<long long>(m) - j * e - static_cast<long long>(deg % 2);
        if (ex < 0 || ex > static_cast<long long>(e) - 1)
            return std::nullopt;
        return static_cast<unsigned>(ex);
    };
    const std::size_t top = 2 * (m / e) + 2;
    std::vector<FpMatrix> bd(top + 2);
    for (std::size_t n = 0; n <= top + 1; ++n) {
        const std::size_t rows = n == 0 ? 0 : (slot(n - 1) ? 1 : 0);
        const std::size_t cols = slot(n) ? 1 : 0;
        bd[n] = FpMatrix(rows, cols, p);
        // Even degrees 2j >= 2 map by f'(x) = e x^{e-1}; odd degrees by zero.
        if (n >= 2 && n % 2 == 0 && rows == 1 && cols == 1 && *slot(n) + e - 1 == *slot(n - 1))
            bd[n].add(0, 0, static_cast<long long>(e));
    }
    std::vector<std::size_t> ranks(top + 1, 0);
    for (std::size_t n = 0; n <= top; ++n)
        ranks[n] = fp_homology(bd[n], bd[n + 1]);
    return ranks;
}

std::vector<std::size_t> predicted_ranks(unsigned e, unsigned m, std::uint64_t p) {
    std::vector<std::size_t> ranks(m + 2, 0);
    const unsigned d = d_function(e, m);
    if (m % e != 0) {
        ranks[2 * d] = 1;
        ranks[2 * d + 1] = 1;
    } else if (e % p == 0) {
        ranks[2 * d + 1] = 1;
        ranks[2 * d + 2] = 1;
    }
    return ranks;
}

void write_complex(std::ostream& os, const NormalizedComplex& c) {
    os << "# weight " << c.m() << " e " << c.e() << " p " << c.p() << '\n';
    for (std::size_t n = 0; n <= c.top_degree(); ++n)
        for (std::size_t i = 0; i < c.dim(n); ++i)
            os << "# basis " << n << ' ' << i << ' ' << c.basis(n)[i].to_string() << '\n';
    os << "# boundary\n";
    for (std::size_t n = 1; n <= c.top_degree(); ++n) {
        const FpMatrix b = c.boundary_fp(n);
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t i = 0; i < b.rows(); ++i)
                if (b(i, j) != 0)
                    os << n << ' ' << j << ' ' << i << ' ' << b(i, j) << '\n';
    }
    os << "# connes\n";
    for (std::size_t n = 0; n <= c.top_degree(); ++n) {
        const FpMatrix b = c.connes_fp(n);
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t i = 0; i < b.rows(); ++i)
                if (b(i, j) != 0)
                    os << n << ' ' << j << ' ' << i << ' ' << b(i, j) << '\n';
    }
}

}  // namespace ktrunc
