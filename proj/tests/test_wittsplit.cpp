#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "ktrunc/wittsplit.hpp"

using namespace ktrunc;

TEST_CASE("split parameters") {
    const SplitParams a = SplitParams::make(2, 3, 12);
    CHECK(a.u == 2);
    CHECK(a.e_prime == 3);
    const SplitParams b = SplitParams::make(3, 1, 2);
    CHECK(b.u == 0);
    CHECK(b.e_prime == 2);
    CHECK_THROWS_AS(SplitParams::make(4, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(SplitParams::make(2, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(SplitParams::make(2, 1, 0), std::invalid_argument);
}

TEST_CASE("s function examples") {
    CHECK(s_function(2, 4, 1) == 3);
    CHECK(s_function(2, 4, 3) == 1);
    CHECK(s_function(2, 3, 5) == 0);
    CHECK(s_function(3, 8, 1) == 2);
    CHECK(s_function(3, 9, 1) == 3);
}

TEST_CASE("s function satisfies its defining inequality") {
    for (std::uint64_t p : {2, 3, 5, 7})
        for (std::uint64_t r = 1; r <= 60; ++r)
            for (std::uint64_t d = 1; d <= 70; ++d) {
                const unsigned s = s_function(p, r, d);
                if (d > r) {
                    CHECK(s == 0);
                    continue;
                }
                REQUIRE(s >= 1);
                CHECK(power(p, s - 1) * d <= r);
                CHECK(BigInt(r) < power(p, s) * d);
            }
}

TEST_CASE("h function examples") {
    const SplitParams p23 = SplitParams::make(2, 2, 3);
    CHECK(h_function(p23, 1) == 3);
    CHECK(h_function(p23, 3) == 0);
    CHECK(h_function(p23, 5) == 1);
    CHECK(h_function(SplitParams::make(2, 2, 2), 1) == 1);
    CHECK_THROWS_AS(h_function(p23, 2), std::invalid_argument);
    CHECK_THROWS_AS(h_function(p23, 0), std::invalid_argument);
}

TEST_CASE("h is nondecreasing in r") {
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t e = 1; e <= 8; ++e)
            for (std::uint64_t m = 1; m <= 40; ++m) {
                if (m % p == 0)
                    continue;
                unsigned prev = 0;
                for (std::uint64_t r = 1; r <= 20; ++r) {
                    const unsigned h = h_function(SplitParams::make(p, r, e), m);
                    CHECK(h >= prev);
                    prev = h;
                }
            }
}

TEST_CASE("predicted quotient examples") {
    CHECK(predicted_quotient(SplitParams::make(2, 2, 2)) == GroupStructure(2, {1, 1}));
    CHECK(predicted_quotient(SplitParams::make(2, 2, 3)) == GroupStructure(2, {1, 3}));
    CHECK(predicted_quotient(SplitParams::make(5, 1, 1)).trivial());
    CHECK(predicted_quotient(SplitParams::make(3, 4, 1)).trivial());
}

TEST_CASE("order identity sum h = r(e - 1)") {
    for (std::uint64_t p : {2, 3, 5, 7})
        for (std::uint64_t e = 1; e <= 8; ++e)
            for (std::uint64_t r = 1; r <= 10; ++r)
                CHECK(predicted_quotient(SplitParams::make(p, r, e)).length() == r * (e - 1));
}

TEST_CASE("brute force quotient examples") {
    CHECK(brute_force_quotient(SplitParams::make(2, 2, 2)) == GroupStructure(2, {1, 1}));
    CHECK(brute_force_quotient(SplitParams::make(2, 2, 3)) == GroupStructure(2, {1, 3}));
    CHECK(brute_force_quotient(SplitParams::make(2, 1, 2)).order() == 2);
    CHECK(brute_force_quotient(SplitParams::make(3, 1, 2)).order() == 3);
    CHECK(brute_force_quotient(SplitParams::make(7, 1, 1)).trivial());
}

TEST_CASE("brute force quotient respects the enumeration bound") {
    CHECK_THROWS_AS(brute_force_quotient(SplitParams::make(2, 4, 5)), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_quotient(SplitParams::make(2, 2, 3), 32), std::invalid_argument);
    CHECK_NOTHROW(brute_force_quotient(SplitParams::make(2, 2, 3), 64));
}

TEST_CASE("brute force matches the prediction on random small parameters") {
    gen::Gen g(21);
    int done = 0;
    while (done < 25) {
        const std::uint64_t p = g.pick(std::vector<std::uint64_t>{2, 3, 5});
        const std::uint64_t r = 1 + g.below(4), e = 1 + g.below(6);
        if (power(p, static_cast<unsigned>(r * e)) > 4096)
            continue;
        const SplitParams sp = SplitParams::make(p, r, e);
        CHECK(brute_force_quotient(sp) == predicted_quotient(sp));
        ++done;
    }
}

TEST_CASE("witt component lands in the p-typical vectors of length s(p, r, d)") {
    gen::Gen g(13);
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t p = g.small_prime(), r = 2 + g.below(8), d = 1 + g.below(r);
        if (d % p == 0) {
            CHECK_THROWS_AS(witt_component(g.witt(TruncationSet::big(r), CoeffRing::integers()), p, d),
                            std::invalid_argument);
            continue;
        }
        const WittVector a = g.witt(TruncationSet::big(r), CoeffRing::integers());
        const WittVector c = witt_component(a, p, d);
        CHECK(c.truncation() == TruncationSet::p_typical(p, s_function(p, r, d)));
        // ghost_{p^j}(I_d a) = ghost_{d p^j}(a)
        for (std::uint64_t q : c.truncation().elements())
            CHECK(ghost(c, q) == ghost(a, d * q));
    }
}
