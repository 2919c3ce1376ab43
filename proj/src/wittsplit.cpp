#include "ktrunc/wittsplit.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace ktrunc {

SplitParams SplitParams::make(std::uint64_t p, std::uint64_t r, std::uint64_t e) {
    if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    if (r == 0 || e == 0)
        throw std::invalid_argument("r and e must be positive");
    SplitParams sp{p, r, e, 0, e};
    while (sp.e_prime % p == 0) {
        sp.e_prime /= p;
        ++sp.u;
    }
    return sp;
}

unsigned s_function(std::uint64_t p, std::uint64_t r, std::uint64_t d) {
    if (d == 0 || d > r)
        return 0;
    unsigned s = 1;
    // invariant: p^{s-1} d <= r
    for (std::uint64_t q = d; r >= q * p; q *= p)
        ++s;
    return s;
}

unsigned h_function(const SplitParams& params, std::uint64_t m_prime) {
    if (m_prime == 0 || m_prime % params.p == 0)
        throw std::invalid_argument("h_function: m' must be positive and prime to p");
    const unsigned s = s_function(params.p, params.r * params.e, m_prime);
    if (m_prime % params.e_prime != 0)
        return s;
    return std::min(params.u, s);
}

GroupStructure predicted_quotient(const SplitParams& params) {
    std::vector<unsigned> exps;
    for (std::uint64_t m = 1; m <= params.r * params.e; ++m)
        if (m % params.p != 0)
            exps.push_back(h_function(params, m));
    return GroupStructure(params.p, std::move(exps));
}

namespace {

// Elements of W_n(F_p) are indexed by their coordinates read as base-p digits,
// a_1 being the least significant.
struct Codec {
    TruncationSet set;
    std::uint64_t p;

    WittVector decode(std::uint64_t index) const {
        std::vector<BigInt> c(set.size());
        for (auto& x : c) {
            x = index % p;
            index /= p;
        }
        return WittVector(set, CoeffRing::fp(p), std::move(c));
    }
    std::uint64_t encode(const WittVector& a) const {
        std::uint64_t index = 0;
        for (std::size_t i = a.coords().size(); i-- > 0;)
            index = index * p + static_cast<std::uint64_t>(a.coords()[i]);
        return index;
    }
};

}  // namespace

GroupStructure brute_force_quotient(const SplitParams& params, std::uint64_t enum_bound) {
    const std::uint64_t n = params.r * params.e;
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (size > enum_bound / params.p)
            throw std::invalid_argument("brute_force_quotient: p^{re} exceeds the enumeration bound " +
                                        std::to_string(enum_bound));
        size *= params.p;
    }

    const Codec big{TruncationSet::big(n), params.p};
    const Codec small{TruncationSet::big(params.r), params.p};
    std::uint64_t small_size = 1;
    for (std::uint64_t i = 0; i < params.r; ++i)
        small_size *= params.p;

    std::vector<std::uint64_t> image;
    image.reserve(small_size);
    for (std::uint64_t b = 0; b < small_size; ++b)
        image.push_back(big.encode(verschiebung(params.e, small.decode(b), big.set)));
    {
        std::unordered_set<std::uint64_t> distinct(image.begin(), image.end());
        if (distinct.size() != image.size())
            throw VerificationError("brute_force_quotient: V_e is not injective");
    }

    // Partition into cosets of the V_e-image.
    constexpr std::uint64_t kUnset = ~std::uint64_t{0};
    std::vector<std::uint64_t> coset(size, kUnset);
    std::vector<std::uint64_t> reps;
    for (std::uint64_t x = 0; x < size; ++x) {
        if (coset[x] != kUnset)
            continue;
        const std::uint64_t id = reps.size();
        reps.push_back(x);
        const WittVector vx = big.decode(x);
        for (std::uint64_t h : image) {
            const std::uint64_t y = big.encode(witt_add(vx, big.decode(h)));
            if (coset[y] != kUnset)
                throw VerificationError("brute_force_quotient: V_e image is not a subgroup");
            coset[y] = id;
        }
    }
    if (reps.size() * image.size() != size)
        throw VerificationError("brute_force_quotient: coset count mismatch");

    // Multiplication by p on the quotient, then the p-exponent of every coset.
    const std::uint64_t zero_coset = coset[0];
    std::vector<std::uint64_t> times_p(reps.size());
    for (std::uint64_t c = 0; c < reps.size(); ++c) {
        const WittVector v = big.decode(reps[c]);
        WittVector acc = v;
        for (std::uint64_t i = 1; i < params.p; ++i)
            acc = witt_add(acc, v);
        times_p[c] = coset[big.encode(acc)];
    }
    std::vector<int> exponent(reps.size(), -1);
    exponent[zero_coset] = 0;
    unsigned max_exp = 0;
    for (std::uint64_t c = 0; c < reps.size(); ++c) {
        std::vector<std::uint64_t> chain;
        std::uint64_t cur = c;
        while (exponent[cur] < 0) {
            chain.push_back(cur);
            cur = times_p[cur];
            if (chain.size() > 64 * n)
                throw VerificationError("brute_force_quotient: element of infinite order");
        }
        int ex = exponent[cur];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            exponent[*it] = ++ex;
        max_exp = std::max<unsigned>(max_exp, static_cast<unsigned>(exponent[c]));
    }

    // #{x : p^k x = 0} = p^{sum_i min(k, h_i)} determines the exponents h_i.
    std::vector<unsigned> at_least(max_exp + 2, 0);  // #{i : h_i >= k}
    std::uint64_t prev_count = 1;
    for (unsigned k = 1; k <= max_exp; ++k) {
        const auto count = static_cast<std::uint64_t>(
            std::count_if(exponent.begin(), exponent.end(), [k](int x) { return static_cast<unsigned>(x) <= k; }));
        std::uint64_t ratio = count / prev_count;
        if (ratio * prev_count != count)
            throw VerificationError("brute_force_quotient: kernel sizes are not nested powers of p");
        unsigned lg = 0;
        while (ratio % params.p == 0) {
            ratio /= params.p;
            ++lg;
        }
        if (ratio != 1)
            throw VerificationError("brute_force_quotient: kernel size is not a power of p");
        at_least[k] = lg;
        prev_count = count;
    }
    std::vector<unsigned> exps;
    for (unsigned k = 1; k <= max_exp; ++k)
        for (unsigned i = at_least[k + 1]; i < at_least[k]; ++i)
            exps.push_back(k);
    return GroupStructure(params.p, std::move(exps));
}

WittVector witt_component(const WittVector& a, std::uint64_t p, std::uint64_t d) {
    const auto& el = a.truncation().elements();
    const std::uint64_t r = el.size();
    if (r == 0 || el.back() != r)
        throw std::invalid_argument("witt_component: expects a big truncation set {1..r}");
    if (d % p == 0)
        throw std::invalid_argument("witt_component: d must be prime to p");
    const unsigned s = s_function(p, r, d);
    if (s == 0)
        throw std::invalid_argument("witt_component: d exceeds r");
    return restrict(frobenius(d, a), TruncationSet::p_typical(p, s));
}

}  // namespace ktrunc
