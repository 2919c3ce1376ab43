#include "ktrunc/tcassemble.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "ktrunc/ssengine.hpp"

namespace ktrunc {

IntMatrix EqualizerModel::relations() const {
    const std::size_t n = size();
    IntMatrix rel(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        rel(v, v) = 1;
        if (v == 0)
            continue;
        const unsigned t = target_lengths[v];
        const unsigned c = source_lengths[v - 1];
        // phi is a unit times reduction, or times p^{t-c} composed with inclusion
        const unsigned lift = t > c ? t - c : 0;
        rel(v, v - 1) = -BigInt(units[v]) * power(p, lift);
    }
    return rel;
}

GroupStructure EqualizerModel::kernel() const {
    std::vector<BigInt> src, dst;
    for (std::size_t v = 0; v < size(); ++v) {
        if (source_lengths[v] < target_lengths[v])
            throw std::invalid_argument("can must be a reduction");
        src.push_back(power(p, source_lengths[v]));
        dst.push_back(power(p, target_lengths[v]));
    }
    GroupStructure g = kernel_invariants(relations(), src, dst);
    g.prime = p;
    return g;
}

unsigned default_truncation(const SplitParams& params, std::uint64_t m_prime) {
    return s_function(params.p, params.r * params.e, m_prime) + params.u + 2;
}

EqualizerModel equalizer_model(const SplitParams& params, std::uint64_t m_prime, unsigned truncation,
                               std::uint64_t seed) {
    if (m_prime == 0 || m_prime % params.p == 0)
        throw std::invalid_argument("m' must be positive and prime to p");
    EqualizerModel model;
    model.p = params.p;
    std::mt19937_64 rng(seed ^ (m_prime * 0x9e3779b97f4a7c15ULL));
    std::uniform_int_distribution<std::uint64_t> unit(1, params.p - 1);
    // TC_{2r-1} sits in the odd degree 2(r-1)+1 of the towers
    const long long degree = static_cast<long long>(params.r) - 1;
    std::uint64_t m = m_prime;
    for (unsigned v = 0; v <= truncation; ++v) {
        const TowerGroup tower = closed_form(params.p, static_cast<unsigned>(params.e), m, degree);
        model.source_lengths.push_back(tower.tcminus_length);
        model.target_lengths.push_back(tower.tp_length);
        model.units.push_back(v == 0 ? 1 : unit(rng));
        m *= params.p;
    }
    return model;
}

GroupStructure tc_weight_group(std::uint64_t p, std::uint64_t e, std::uint64_t r, std::uint64_t m_prime,
                               const TcOptions& options) {
    const SplitParams params = SplitParams::make(p, r, e);
    const unsigned h = h_function(params, m_prime);
    const GroupStructure by_cases = h == 0 ? GroupStructure(p, {}) : GroupStructure(p, {h});

    const unsigned v_max = options.truncation.value_or(default_truncation(params, m_prime));
    const GroupStructure by_kernel = equalizer_model(params, m_prime, v_max, options.seed).kernel();
    if (!(by_cases == by_kernel)) {
        std::ostringstream os;
        os << "weight " << m_prime << " of TC_" << 2 * r - 1 << " (p=" << p << ", e=" << e
           << "): case analysis gives " << by_cases.to_string() << ", equalizer kernel gives "
           << by_kernel.to_string();
        throw VerificationError(os.str());
    }
    return by_cases;
}

GroupStructure tc_groups(std::uint64_t p, std::uint64_t e, std::uint64_t r, unsigned f, const TcOptions& options) {
    if (r == 0)
        throw std::invalid_argument("r must be positive");
    if (f == 0)
        throw std::invalid_argument("f must be positive");
    std::vector<unsigned> exps;
    for (std::uint64_t m = 1; m <= r * e; ++m) {
        if (m % p == 0)
            continue;
        const GroupStructure g = tc_weight_group(p, e, r, m, options);
        exps.insert(exps.end(), g.exponents.begin(), g.exponents.end());
    }
    return GroupStructure(p, std::move(exps), f);
}

GroupStructure tc_in_degree(std::uint64_t p, std::uint64_t e, std::uint64_t n, unsigned f, const TcOptions& options) {
    if (n == 0)
        throw std::invalid_argument("degree must be positive");
    if (n % 2 == 0)
        return GroupStructure(p, {}, f);
    return tc_groups(p, e, (n + 1) / 2, f, options);
}

GroupStructure k_groups(std::uint64_t p, std::uint64_t e, std::uint64_t r, unsigned f, const TcOptions& options) {
    return tc_groups(p, e, r, f, options);
}

std::string CrossCheckReport::to_string() const {
    std::ostringstream os;
    os << "p=" << p << " e=" << e << " r=" << r << "  A=" << (brute_force ? brute_force->to_string() : "skipped")
       << "  B=" << predicted.to_string() << "  C=" << assembled.to_string() << "  " << (pass ? "pass" : "FAIL");
    if (!note.empty())
        os << "  (" << note << ")";
    return os.str();
}

CrossCheckReport cross_check(std::uint64_t p, std::uint64_t e, std::uint64_t r, std::uint64_t enum_bound,
                             std::uint64_t seed) {
    CrossCheckReport rep;
    rep.p = p;
    rep.e = e;
    rep.r = r;
    const SplitParams params = SplitParams::make(p, r, e);
    rep.predicted = predicted_quotient(params);
    try {
        rep.assembled = tc_groups(p, e, r, 1, TcOptions{seed, std::nullopt});
    } catch (const VerificationError& err) {
        rep.note = err.what();
        rep.pass = false;
        return rep;
    }
    bool fits = true;
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < r * e && fits; ++i) {
        if (size > enum_bound / p)
            fits = false;
        else
            size *= p;
    }
    if (fits)
        rep.brute_force = brute_force_quotient(params, enum_bound);
    else
        rep.note = "route A skipped: p^(re) exceeds the enumeration bound";
    rep.pass = rep.predicted == rep.assembled && (!rep.brute_force || *rep.brute_force == rep.predicted);
    return rep;
}

}  // namespace ktrunc
