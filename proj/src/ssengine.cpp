#include "ktrunc/ssengine.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ktrunc {

const char* to_string(PageMode mode) { return mode == PageMode::tate ? "tate" : "hfp"; }

std::string PageGenerator::name(unsigned m) const {
    const char* letter = role == GeneratorRole::y ? "y" : role == GeneratorRole::z ? "z" : "w";
    return std::string(letter) + "_" + std::to_string(m);
}

std::optional<std::size_t> BigradedPage::find(GeneratorRole role) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i].role == role)
            return i;
    return std::nullopt;
}

bool BigradedPage::contains(const PageClass& c) const {
    if (c.generator >= generators.size() || c.a < 0)
        return false;
    return mode == PageMode::tate || c.b >= 0;
}

std::string BigradedPage::describe(const PageClass& c) const {
    std::ostringstream os;
    os << "t^" << c.b << " x^" << c.a << " " << generators[c.generator].name(m);
    return os.str();
}

void check_pattern(const BigradedPage& page, const DifferentialPattern& pattern) {
    if (pattern.source >= page.generators.size() || pattern.target >= page.generators.size())
        throw std::invalid_argument("pattern refers to a missing generator");
    if (pattern.page < 2)
        throw std::invalid_argument("pattern page must be at least 2");
    const long long dx = -2 * pattern.t_shift;
    const long long dy = page.generators[pattern.target].vertical + 2 * pattern.x_shift -
                         page.generators[pattern.source].vertical;
    const long long rho = pattern.page;
    if (dx != -rho || dy != rho - 1)
        throw std::invalid_argument("pattern bidegree mismatch");
}

BigradedPage build_e2(const HomologySummary& homology, PageMode mode) {
    BigradedPage page;
    page.mode = mode;
    page.p = homology.p;
    page.e = homology.e;
    page.m = homology.m;
    page.d = homology.d;
    if (!homology.low_degree)
        return page;

    const int lo = static_cast<int>(*homology.low_degree);
    const int d2 = static_cast<int>(2 * homology.d);
    std::size_t nonzero = 0;
    for (std::size_t r : homology.ranks)
        nonzero += r;
    if (nonzero != 2 || homology.rank(lo) != 1 || homology.rank(lo + 1) != 1)
        throw VerificationError("homology of B(" + std::to_string(homology.m) + ") is not two adjacent lines");

    if (homology.m % homology.e != 0) {
        if (lo != d2)
            throw VerificationError("homology starts outside degree 2d");
        page.generators = {{GeneratorRole::y, d2}, {GeneratorRole::z, d2 + 1}};
    } else {
        if (lo != d2 + 1)
            throw VerificationError("homology starts outside degree 2d+1");
        page.generators = {{GeneratorRole::z, d2 + 1}, {GeneratorRole::w, d2 + 2}};
    }
    return page;
}

std::vector<DifferentialPattern> d2_from_connes(const BigradedPage& page, const HomologySummary& homology) {
    std::vector<DifferentialPattern> out;
    if (page.empty())
        return out;
    const std::uint64_t c = homology.connes_scalar.value_or(0) % page.p;
    DifferentialPattern pat;
    pat.page = 2;
    pat.t_shift = 1;
    pat.x_shift = 0;
    pat.coefficient = c;
    pat.origin = "t*B";
    if (auto y = page.find(GeneratorRole::y)) {
        pat.source = *y;
        pat.target = *page.find(GeneratorRole::z);
    } else {
        // z is an infinite cycle, so B must vanish on it
        if (c != 0)
            throw VerificationError("Connes operator is nonzero on z_" + std::to_string(page.m));
        pat.source = *page.find(GeneratorRole::z);
        pat.target = *page.find(GeneratorRole::w);
    }
    check_pattern(page, pat);
    out.push_back(pat);
    return out;
}

std::vector<DifferentialPattern> higher_patterns(const BigradedPage& page,
                                                 const std::vector<DifferentialPattern>& d2) {
    std::vector<DifferentialPattern> out;
    if (page.empty())
        return out;
    auto d2_vanishes_on = [&](std::size_t gen) {
        for (const auto& pat : d2)
            if (pat.page == 2 && pat.source == gen && pat.coefficient % page.p != 0)
                return false;
        return true;
    };
    DifferentialPattern pat;
    pat.coefficient = 1;
    pat.up_to_unit = true;
    if (auto y = page.find(GeneratorRole::y)) {
        const unsigned v = valuation(page.m, page.p);
        if (v == 0 || !d2_vanishes_on(*y))
            return out;
        pat.page = 2 * v + 2;
        pat.source = *y;
        pat.target = *page.find(GeneratorRole::z);
        pat.t_shift = v + 1;
        pat.x_shift = v;
        pat.origin = "t(tx)^" + std::to_string(v);
    } else {
        const unsigned u = valuation(page.e, page.p);
        const std::size_t w = *page.find(GeneratorRole::w);
        if (u == 0 || !d2_vanishes_on(w))
            return out;
        pat.page = 2 * u;
        pat.source = w;
        pat.target = *page.find(GeneratorRole::z);
        pat.t_shift = u;
        pat.x_shift = u;
        pat.origin = "(tx)^" + std::to_string(u);
    }
    check_pattern(page, pat);
    out.push_back(pat);
    return out;
}

std::vector<DifferentialPattern> standard_patterns(const BigradedPage& page, const HomologySummary& homology) {
    std::vector<DifferentialPattern> out = d2_from_connes(page, homology);
    std::vector<DifferentialPattern> more = higher_patterns(page, out);
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

SpectralRun::SpectralRun(BigradedPage page, std::vector<DifferentialPattern> patterns)
    : page_(std::move(page)), patterns_(std::move(patterns)) {
    for (const auto& pat : patterns_) {
        check_pattern(page_, pat);
        pages_.push_back(pat.page);
    }
    std::sort(pages_.begin(), pages_.end());
    pages_.erase(std::unique(pages_.begin(), pages_.end()), pages_.end());
}

bool SpectralRun::alive_entering(const PageClass& c, unsigned page) const {
    if (!page_.contains(c))
        return false;
    for (unsigned rho : pages_) {
        if (rho >= page)
            break;
        bool as_source = false;
        if (killed_at(c, rho, &as_source))
            return false;
    }
    return true;
}

// Assumes c is alive entering the page. The recursion only looks at strictly
// earlier pages, so it terminates.
std::optional<std::size_t> SpectralRun::killed_at(const PageClass& c, unsigned page, bool* as_source) const {
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        const auto& pat = patterns_[i];
        if (pat.page != page || pat.coefficient % page_.p == 0)
            continue;
        if (pat.source == c.generator) {
            const PageClass target{pat.target, c.b + pat.t_shift, c.a + pat.x_shift};
            if (alive_entering(target, page)) {
                *as_source = true;
                return i;
            }
        }
        if (pat.target == c.generator) {
            const PageClass source{pat.source, c.b - pat.t_shift, c.a - pat.x_shift};
            if (alive_entering(source, page)) {
                *as_source = false;
                return i;
            }
        }
    }
    return std::nullopt;
}

ClassFate SpectralRun::fate(const PageClass& c) const {
    ClassFate f;
    if (!page_.contains(c))
        throw std::invalid_argument("class is not on the page");
    for (unsigned rho : pages_) {
        bool as_source = false;
        if (auto idx = killed_at(c, rho, &as_source)) {
            f.survives = false;
            f.page = rho;
            f.pattern = *idx;
            f.as_source = as_source;
            return f;
        }
    }
    return f;
}

std::vector<PageClass> SpectralRun::classes_in_degree(long long total_degree, long long a_max) const {
    std::vector<PageClass> out;
    for (std::size_t g = 0; g < page_.generators.size(); ++g) {
        const long long vert = page_.generators[g].vertical;
        const long long diff = vert - total_degree;
        if (diff % 2 != 0)
            continue;
        for (long long a = 0; a <= a_max; ++a) {
            const PageClass c{g, (diff + 2 * a) / 2, a};
            if (page_.contains(c))
                out.push_back(c);
        }
    }
    return out;
}

// Past this x-power every existence condition in every pattern holds, so the
// fate of a class no longer depends on a.
long long SpectralRun::x_cap(long long total_degree) const {
    long long shifts = 0;
    int vert = 0;
    for (const auto& pat : patterns_)
        shifts = std::max(shifts, pat.t_shift + pat.x_shift);
    for (const auto& g : page_.generators)
        vert = std::max(vert, std::abs(g.vertical));
    return (std::abs(total_degree) + vert) / 2 + 2 * shifts + 2;
}

std::vector<PageClass> SpectralRun::survivors(long long total_degree) const {
    const long long cap = x_cap(total_degree);
    std::vector<PageClass> out;
    for (const auto& c : classes_in_degree(total_degree, cap))
        if (fate(c).survives)
            out.push_back(c);
    const long long tail = cap + 4;
    for (const auto& c : classes_in_degree(total_degree, tail)) {
        if (c.a <= cap)
            continue;
        if (fate(c).survives)
            throw VerificationError("infinitely many survivors in total degree " + std::to_string(total_degree) +
                                    " (" + page_.describe(c) + ")");
    }
    return out;
}

GroupStructure SpectralRun::group(long long total_degree) const {
    const auto s = survivors(total_degree);
    if (s.empty())
        return GroupStructure(page_.p, {});
    return GroupStructure(page_.p, {static_cast<unsigned>(s.size())});
}

void SpectralRun::dump(std::ostream& os, long long min_degree, long long max_degree) const {
    for (long long n = min_degree; n <= max_degree; ++n) {
        for (const auto& c : classes_in_degree(n, x_cap(n))) {
            os << n << ": " << page_.describe(c) << " [";
            const ClassFate f = fate(c);
            if (f.survives) {
                os << "survives";
            } else {
                const auto& pat = patterns_[f.pattern];
                os << "killed-by: d" << pat.page << "(" << page_.generators[pat.source].name(page_.m) << ") = "
                   << pat.origin << " " << page_.generators[pat.target].name(page_.m)
                   << (f.as_source ? " as source" : " as target");
            }
            os << "]\n";
        }
    }
}

TowerGroup closed_form(std::uint64_t p, unsigned e, std::uint64_t m, long long r) {
    if (m == 0 || e == 0)
        throw std::invalid_argument("closed_form needs m, e >= 1");
    TowerGroup g;
    g.p = p;
    g.e = e;
    g.m = m;
    g.r = r;
    g.v = valuation(m, p);
    g.m_prime = m;
    for (unsigned i = 0; i < g.v; ++i)
        g.m_prime /= p;
    const long long d = static_cast<long long>((m - 1) / e);
    if (m % e != 0) {
        g.tp_length = g.v;
        g.tcminus_length = r >= d ? g.v + 1 : g.v;
    } else {
        const unsigned u = valuation(e, p);
        g.tp_length = u;
        g.tcminus_length = u;
    }
    return g;
}

}  // namespace ktrunc
