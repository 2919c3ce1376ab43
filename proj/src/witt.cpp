#include "ktrunc/witt.hpp"

#include <algorithm>
#include <string>

namespace ktrunc {

TruncationSet TruncationSet::build(std::vector<std::uint64_t> sorted) {
    auto impl = std::make_shared<Impl>();
    impl->elements = std::move(sorted);
    impl->divisors.resize(impl->elements.size());
    for (std::size_t i = 0; i < impl->elements.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (impl->elements[i] % impl->elements[j] == 0)
                impl->divisors[i].push_back(j);
    return TruncationSet(std::move(impl));
}

TruncationSet TruncationSet::big(std::uint64_t n) {
    std::vector<std::uint64_t> el(n);
    for (std::uint64_t i = 0; i < n; ++i)
        el[i] = i + 1;
    return build(std::move(el));
}

TruncationSet TruncationSet::p_typical(std::uint64_t p, unsigned s) {
    if (!is_prime(p))
        throw std::invalid_argument("p_typical: " + std::to_string(p) + " is not prime");
    std::vector<std::uint64_t> el;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < s; ++i, q *= p)
        el.push_back(q);
    return build(std::move(el));
}

TruncationSet TruncationSet::from_elements(std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    for (std::uint64_t n : elements) {
        if (n == 0)
            throw std::invalid_argument("truncation set: elements must be positive");
        for (std::uint64_t d = 1; d * d <= n; ++d)
            if (n % d == 0 && (!std::binary_search(elements.begin(), elements.end(), d) ||
                               !std::binary_search(elements.begin(), elements.end(), n / d)))
                throw std::invalid_argument("truncation set: not closed under divisors (" + std::to_string(n) + ")");
    }
    return build(std::move(elements));
}

std::optional<std::size_t> TruncationSet::index_of(std::uint64_t n) const {
    const auto& el = impl_->elements;
    auto it = std::lower_bound(el.begin(), el.end(), n);
    if (it == el.end() || *it != n)
        return std::nullopt;
    return static_cast<std::size_t>(it - el.begin());
}

TruncationSet TruncationSet::divide(std::uint64_t d) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n : elements())
        if (n % d == 0)
            out.push_back(n / d);
    return build(std::move(out));
}

bool TruncationSet::is_subset_of(const TruncationSet& other) const {
    return std::all_of(elements().begin(), elements().end(), [&](std::uint64_t n) { return other.contains(n); });
}

WittVector::WittVector(TruncationSet truncation, CoeffRing ring)
    : truncation_(std::move(truncation)), ring_(ring), coords_(truncation_.size()) {}

WittVector::WittVector(TruncationSet truncation, CoeffRing ring, std::vector<BigInt> coords)
    : truncation_(std::move(truncation)), ring_(ring), coords_(std::move(coords)) {
    if (coords_.size() != truncation_.size())
        throw std::invalid_argument("WittVector: coordinate count does not match the truncation set");
    if (!ring_.is_integers()) {
        const BigInt p(ring_.prime);
        for (auto& c : coords_) {
            c %= p;
            if (c < 0)
                c += p;
        }
    }
}

WittVector WittVector::one(TruncationSet truncation, CoeffRing ring) {
    WittVector v(std::move(truncation), ring);
    if (!v.coords_.empty())
        v.coords_[0] = 1;
    return v;
}

const BigInt& WittVector::operator[](std::uint64_t n) const {
    auto i = truncation_.index_of(n);
    if (!i)
        throw std::out_of_range("WittVector: index " + std::to_string(n) + " not in truncation set");
    return coords_[*i];
}

namespace {

std::vector<BigInt> ghosts_of(const TruncationSet& s, const std::vector<BigInt>& a) {
    const auto& el = s.elements();
    std::vector<BigInt> w(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) {
        const std::uint64_t n = el[i];
        BigInt sum = 0;
        for (std::size_t j : s.divisors_of(i)) {
            if (a[j] == 0)
                continue;
            const std::uint64_t d = el[j];
            sum += BigInt(d) * boost::multiprecision::pow(a[j], static_cast<unsigned>(n / d));
        }
        w[i] = std::move(sum);
    }
    return w;
}

void require_integers(const WittVector& a, const char* what) {
    if (!a.ring().is_integers())
        throw std::invalid_argument(std::string(what) + ": requires integer coefficients");
}

void require_compatible(const WittVector& a, const WittVector& b) {
    if (!(a.ring() == b.ring()))
        throw std::invalid_argument("Witt vectors over different coefficient rings");
    if (!(a.truncation() == b.truncation()))
        throw std::invalid_argument("Witt vectors over different truncation sets");
}

// Lift-compute-reduce wrapper for ring operations defined through ghosts.
template <class Op>
WittVector ghostwise(const WittVector& a, const WittVector& b, Op op) {
    require_compatible(a, b);
    const auto& s = a.truncation();
    auto wa = ghosts_of(s, a.coords());
    const auto wb = ghosts_of(s, b.coords());
    for (std::size_t i = 0; i < wa.size(); ++i)
        wa[i] = op(wa[i], wb[i]);
    WittVector out = from_ghost(s, wa);
    return a.ring().is_integers() ? out : reduce_mod(out, a.ring().prime);
}

}  // namespace

BigInt ghost(const WittVector& a, std::uint64_t n) {
    require_integers(a, "ghost");
    auto i = a.truncation().index_of(n);
    if (!i)
        throw std::out_of_range("ghost: index " + std::to_string(n) + " not in truncation set");
    const auto& el = a.truncation().elements();
    BigInt sum = 0;
    for (std::size_t j : a.truncation().divisors_of(*i))
        sum += BigInt(el[j]) * boost::multiprecision::pow(a.coords()[j], static_cast<unsigned>(n / el[j]));
    return sum;
}

std::vector<BigInt> ghost_vector(const WittVector& a) {
    require_integers(a, "ghost_vector");
    return ghosts_of(a.truncation(), a.coords());
}

WittVector from_ghost(const TruncationSet& s, const std::vector<BigInt>& ghosts) {
    if (ghosts.size() != s.size())
        throw std::invalid_argument("from_ghost: ghost vector length does not match the truncation set");
    const auto& el = s.elements();
    std::vector<BigInt> a(el.size());
    for (std::size_t i = 0; i < el.size(); ++i) {
        const std::uint64_t n = el[i];
        BigInt rest = ghosts[i];
        for (std::size_t j : s.divisors_of(i)) {
            if (j == i || a[j] == 0)
                continue;
            rest -= BigInt(el[j]) * boost::multiprecision::pow(a[j], static_cast<unsigned>(n / el[j]));
        }
        if (rest % n != 0)
            throw VerificationError("from_ghost: ghost vector is not integral at n = " + std::to_string(n));
        a[i] = rest / n;
    }
    return WittVector(s, CoeffRing::integers(), std::move(a));
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
    return ghostwise(a, b, [](const BigInt& x, const BigInt& y) { return BigInt(x + y); });
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
    return ghostwise(a, b, [](const BigInt& x, const BigInt& y) { return BigInt(x * y); });
}

WittVector witt_neg(const WittVector& a) {
    auto w = ghosts_of(a.truncation(), a.coords());
    for (auto& x : w)
        x = -x;
    WittVector out = from_ghost(a.truncation(), w);
    return a.ring().is_integers() ? out : reduce_mod(out, a.ring().prime);
}

WittVector witt_scale(const BigInt& n, const WittVector& a) {
    auto w = ghosts_of(a.truncation(), a.coords());
    for (auto& x : w)
        x *= n;
    WittVector out = from_ghost(a.truncation(), w);
    return a.ring().is_integers() ? out : reduce_mod(out, a.ring().prime);
}

WittVector verschiebung(std::uint64_t e, const WittVector& a, const TruncationSet& target) {
    if (e == 0)
        throw std::invalid_argument("verschiebung: e must be positive");
    for (std::uint64_t n : a.truncation().elements())
        if (!target.contains(e * n))
            throw std::invalid_argument("verschiebung: target truncation lacks " + std::to_string(e * n));
    std::vector<BigInt> out(target.size());
    const auto& el = target.elements();
    for (std::size_t i = 0; i < el.size(); ++i)
        if (el[i] % e == 0) {
            auto j = a.truncation().index_of(el[i] / e);
            if (j)
                out[i] = a.coords()[*j];
        }
    return WittVector(target, a.ring(), std::move(out));
}

WittVector frobenius(std::uint64_t d, const WittVector& a) {
    if (d == 0)
        throw std::invalid_argument("frobenius: d must be positive");
    const TruncationSet target = a.truncation().divide(d);
    if (target.empty())
        throw std::invalid_argument("frobenius: empty target truncation");
    const WittVector lifted = a.ring().is_integers() ? a : lift(a);
    const auto w = ghosts_of(a.truncation(), lifted.coords());
    std::vector<BigInt> wt(target.size());
    for (std::size_t i = 0; i < target.size(); ++i)
        wt[i] = w[*a.truncation().index_of(d * target.elements()[i])];
    WittVector out = from_ghost(target, wt);
    return a.ring().is_integers() ? out : reduce_mod(out, a.ring().prime);
}

WittVector restrict(const WittVector& a, const TruncationSet& subset) {
    if (!subset.is_subset_of(a.truncation()))
        throw std::invalid_argument("restrict: target is not a subset of the truncation set");
    std::vector<BigInt> out(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i)
        out[i] = a[subset.elements()[i]];
    return WittVector(subset, a.ring(), std::move(out));
}

WittVector reduce_mod(const WittVector& a, std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("reduce_mod: modulus is not prime");
    return WittVector(a.truncation(), CoeffRing::fp(p), a.coords());
}

WittVector lift(const WittVector& a) {
    return WittVector(a.truncation(), CoeffRing::integers(), a.coords());
}

BigInt fp_cardinality(const TruncationSet& s, std::uint64_t p) {
    return power(p, static_cast<unsigned>(s.size()));
}

}  // namespace ktrunc
