#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ktrunc/cycbar.hpp"
#include "ktrunc/exactalg.hpp"

namespace ktrunc {

enum class PageMode { tate, hfp };

const char* to_string(PageMode mode);

enum class GeneratorRole { y, z, w };

/// Homology generator of B(m) placed in bidegree (0, vertical).
struct PageGenerator {
    GeneratorRole role;
    int vertical;

    std::string name(unsigned m) const;
};

/// The class t^b x^a g. Bidegree (-2b, vertical(g) + 2a).
struct PageClass {
    std::size_t generator;
    long long b;
    long long a;

    friend bool operator==(const PageClass&, const PageClass&) = default;
};

/// E^2 page k[t^{+-1}, x]{generators} (tate) or its b >= 0 truncation (hfp).
/// Only generator orbits are stored.
struct BigradedPage {
    PageMode mode = PageMode::tate;
    std::uint64_t p = 2;
    unsigned e = 2;
    unsigned m = 1;
    unsigned d = 0;
    std::vector<PageGenerator> generators;

    bool empty() const { return generators.empty(); }
    std::optional<std::size_t> find(GeneratorRole role) const;
    /// Whether the class is part of the page (b >= 0 in hfp mode, a >= 0).
    bool contains(const PageClass& c) const;
    int filtration(const PageClass& c) const { return static_cast<int>(-2 * c.b); }
    int vertical(const PageClass& c) const { return generators[c.generator].vertical + static_cast<int>(2 * c.a); }
    long long total_degree(const PageClass& c) const { return filtration(c) + vertical(c); }
    std::string describe(const PageClass& c) const;
};

/// d^page(g_source) = coefficient * t^{t_shift} x^{x_shift} g_target, extended
/// t- and x-linearly. A zero coefficient records a vanishing differential.
struct DifferentialPattern {
    unsigned page = 2;
    std::size_t source = 0;
    std::size_t target = 0;
    long long t_shift = 1;
    long long x_shift = 0;
    std::uint64_t coefficient = 1;
    /// Set when the pattern is only determined up to a unit of F_p.
    bool up_to_unit = false;
    std::string origin;
};

/// Throws std::invalid_argument ("pattern bidegree mismatch") unless the
/// pattern shifts bidegree by (-page, page - 1).
void check_pattern(const BigradedPage& page, const DifferentialPattern& pattern);

/// E^2 page from the homology of B(m). Empty when the homology vanishes.
BigradedPage build_e2(const HomologySummary& homology, PageMode mode);

/// d^2 = t * (Connes operator): on a (y, z) page d^2(y) = c t z with c the
/// Connes scalar; on a (z, w) page d^2(z) = c t w, which must vanish.
std::vector<DifferentialPattern> d2_from_connes(const BigradedPage& page, const HomologySummary& homology);

/// The higher differentials used once d^2 vanishes on the top generator:
/// d^{2v+2}(y) = t (t x)^v z when e !| m and v = v_p(m) > 0, and
/// d^{2u}(w) = (t x)^u z when e | m and p^u || e with u > 0.
std::vector<DifferentialPattern> higher_patterns(const BigradedPage& page,
                                                 const std::vector<DifferentialPattern>& d2);

/// d2_from_connes followed by higher_patterns.
std::vector<DifferentialPattern> standard_patterns(const BigradedPage& page, const HomologySummary& homology);

struct ClassFate {
    bool survives = true;
    unsigned page = 0;
    std::size_t pattern = 0;
    bool as_source = false;
};

/// Runs the page through the patterns (ascending page order) and answers
/// questions about E^infinity without materializing infinitely many classes.
class SpectralRun {
public:
    SpectralRun(BigradedPage page, std::vector<DifferentialPattern> patterns);

    const BigradedPage& page() const { return page_; }
    const std::vector<DifferentialPattern>& patterns() const { return patterns_; }

    ClassFate fate(const PageClass& c) const;
    /// Surviving classes in a total degree. Throws VerificationError if the
    /// survivors do not stop after a finite x-range.
    std::vector<PageClass> survivors(long long total_degree) const;
    /// One cyclic factor p^L with L the survivor count.
    GroupStructure group(long long total_degree) const;

    /// Lines "total_degree: t^b x^a g [killed-by: ... | survives]".
    void dump(std::ostream& os, long long min_degree, long long max_degree) const;

private:
    bool alive_entering(const PageClass& c, unsigned page) const;
    std::optional<std::size_t> killed_at(const PageClass& c, unsigned page, bool* as_source) const;
    std::vector<PageClass> classes_in_degree(long long total_degree, long long a_max) const;
    long long x_cap(long long total_degree) const;

    BigradedPage page_;
    std::vector<DifferentialPattern> patterns_;
    std::vector<unsigned> pages_;
};

/// Closed-form lengths of pi_{2r+1} of the Tate (tp) and homotopy fixed point
/// (tcminus) constructions for the weight-m summand; even degrees vanish.
struct TowerGroup {
    std::uint64_t p = 2;
    unsigned e = 2;
    std::uint64_t m = 1;
    long long r = 0;
    unsigned v = 0;
    std::uint64_t m_prime = 1;
    unsigned tp_length = 0;
    unsigned tcminus_length = 0;
};

TowerGroup closed_form(std::uint64_t p, unsigned e, std::uint64_t m, long long r);

}  // namespace ktrunc
