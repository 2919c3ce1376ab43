#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ktrunc/tcassemble.hpp"

using namespace ktrunc;

TEST_CASE("equalizer model shape") {
    const SplitParams sp = SplitParams::make(2, 2, 3);
    const EqualizerModel m = equalizer_model(sp, 1, 4, 0);
    CHECK(m.size() == 5);
    // weights 1, 2, 4, 8, 16 in degree 3
    CHECK(m.source_lengths == std::vector<unsigned>{1, 2, 3, 3, 4});
    CHECK(m.target_lengths == std::vector<unsigned>{0, 1, 2, 3, 4});
    const IntMatrix rel = m.relations();
    CHECK(rel(0, 0) == 1);
    CHECK(rel(1, 0) == -1);
    CHECK(rel(0, 1) == 0);
    CHECK(m.kernel() == GroupStructure(2, {3}));
    CHECK_THROWS_AS(equalizer_model(sp, 2, 4, 0), std::invalid_argument);
}

TEST_CASE("phi scales by a power of p when it includes") {
    EqualizerModel m;
    m.p = 3;
    m.source_lengths = {1, 3};
    m.target_lengths = {0, 3};
    m.units = {1, 2};
    const IntMatrix rel = m.relations();
    CHECK(rel(1, 0) == -18);  // -unit * 3^{3-1}
    m.source_lengths = {0, 2};
    CHECK_THROWS_AS(m.kernel(), std::invalid_argument);
}

TEST_CASE("default truncation") {
    CHECK(default_truncation(SplitParams::make(2, 2, 3), 1) == 5);
    CHECK(default_truncation(SplitParams::make(2, 2, 2), 1) == 6);
}

TEST_CASE("weight group examples") {
    CHECK(tc_weight_group(2, 2, 2, 1) == GroupStructure(2, {1}));
    CHECK(tc_weight_group(2, 3, 2, 3).trivial());
    CHECK(tc_weight_group(2, 3, 2, 1) == GroupStructure(2, {3}));
    CHECK_THROWS_AS(tc_weight_group(2, 3, 2, 2), std::invalid_argument);
}

TEST_CASE("a truncation that is too short is caught as a route disagreement") {
    TcOptions opts;
    opts.truncation = 0;
    CHECK_THROWS_WITH_AS(tc_weight_group(2, 3, 2, 1, opts), doctest::Contains("Z/8"), VerificationError);
}

TEST_CASE("TC and K group examples") {
    CHECK(tc_groups(2, 2, 2) == GroupStructure(2, {1, 1}));
    CHECK(tc_groups(2, 3, 2) == GroupStructure(2, {1, 3}));
    CHECK(k_groups(2, 2, 2) == GroupStructure(2, {1, 1}));
    const GroupStructure k1 = k_groups(3, 3, 1);
    CHECK(k1.order() == 9);
    CHECK(k1.length() == 2);
    CHECK_THROWS_AS(tc_groups(2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(tc_groups(2, 2, 1, 0), std::invalid_argument);
}

TEST_CASE("residue degree repeats every factor") {
    const GroupStructure g = tc_groups(2, 3, 2, 3);
    CHECK(g.residue_degree == 3);
    CHECK(g.factors() == std::vector<BigInt>{2, 2, 2, 8, 8, 8});
    CHECK(g.length() == 3 * 2 * (3 - 1));
}

TEST_CASE("even degrees are trivial") {
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t e = 2; e <= 6; ++e)
            for (std::uint64_t n = 2; n <= 10; n += 2)
                CHECK(tc_in_degree(p, e, n).trivial());
    CHECK(tc_in_degree(2, 2, 3) == tc_groups(2, 2, 2));
    CHECK_THROWS_AS(tc_in_degree(2, 2, 0), std::invalid_argument);
}

TEST_CASE("order of TC is p^{r(e-1)}") {
    for (std::uint64_t p : {2, 3, 5, 7})
        for (std::uint64_t e = 1; e <= 6; ++e)
            for (std::uint64_t r = 1; r <= 6; ++r)
                CHECK(tc_groups(p, e, r).length() == r * (e - 1));
}

TEST_CASE("kernel is unit robust and stable under truncation") {
    for (std::uint64_t p : {3, 5})
        for (std::uint64_t e : {2, 3, 6, 9})
            for (std::uint64_t r = 1; r <= 4; ++r) {
                const SplitParams sp = SplitParams::make(p, r, e);
                for (std::uint64_t m = 1; m <= r * e; ++m) {
                    if (m % p == 0)
                        continue;
                    const GroupStructure base = tc_weight_group(p, e, r, m);
                    const unsigned v0 = default_truncation(sp, m);
                    for (std::uint64_t seed = 1; seed <= 20; ++seed)
                        CHECK(equalizer_model(sp, m, v0, seed).kernel() == base);
                    for (unsigned v = v0; v <= v0 + 4; ++v)
                        CHECK(equalizer_model(sp, m, v, 0).kernel() == base);
                }
            }
}

TEST_CASE("cross check examples") {
    const CrossCheckReport a = cross_check(2, 2, 2);
    CHECK(a.pass);
    REQUIRE(a.brute_force.has_value());
    CHECK(*a.brute_force == GroupStructure(2, {1, 1}));
    CHECK(a.assembled == GroupStructure(2, {1, 1}));

    const CrossCheckReport b = cross_check(2, 3, 2);
    CHECK(b.pass);
    CHECK(b.predicted == GroupStructure(2, {1, 3}));

    const CrossCheckReport c = cross_check(3, 2, 1);
    CHECK(c.pass);
    CHECK(c.assembled.order() == 3);
    CHECK(c.brute_force->order() == 3);

    const CrossCheckReport d = cross_check(2, 3, 2, 16);
    CHECK(d.pass);
    CHECK_FALSE(d.brute_force.has_value());
    CHECK(d.note.find("skipped") != std::string::npos);
    CHECK(d.to_string().find("A=skipped") != std::string::npos);
}
