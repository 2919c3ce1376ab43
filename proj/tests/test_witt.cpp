#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "ktrunc/witt.hpp"

using namespace ktrunc;

namespace {

const CoeffRing Z = CoeffRing::integers();

WittVector wz(const TruncationSet& s, std::vector<BigInt> c) { return WittVector(s, Z, std::move(c)); }

std::vector<BigInt> ints(std::initializer_list<long long> xs) { return std::vector<BigInt>(xs.begin(), xs.end()); }

}  // namespace

TEST_CASE("truncation sets") {
    CHECK(TruncationSet::big(4).elements() == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(TruncationSet::p_typical(3, 3).elements() == std::vector<std::uint64_t>{1, 3, 9});
    CHECK(TruncationSet::p_typical(2, 0).empty());
    CHECK(TruncationSet::big(6).divide(2) == TruncationSet::big(3));
    CHECK(TruncationSet::p_typical(2, 3).is_subset_of(TruncationSet::big(4)));
    CHECK_FALSE(TruncationSet::big(4).is_subset_of(TruncationSet::p_typical(2, 3)));
    CHECK(TruncationSet::from_elements({1, 2, 3, 6}).size() == 4);
    CHECK_THROWS_AS(TruncationSet::from_elements({1, 6}), std::invalid_argument);
    CHECK_THROWS_AS(TruncationSet::from_elements({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(TruncationSet::p_typical(4, 2), std::invalid_argument);
}

TEST_CASE("ghost examples") {
    const auto s12 = TruncationSet::from_elements({1, 2});
    CHECK(ghost_vector(wz(s12, ints({1, 1}))) == ints({1, 3}));
    CHECK(ghost_vector(WittVector::one(TruncationSet::big(4), Z)) == ints({1, 1, 1, 1}));
    CHECK(ghost_vector(wz(s12, ints({0, 1}))) == ints({0, 2}));
    CHECK(ghost(wz(s12, ints({0, 1})), 2) == 2);
}

TEST_CASE("ghost errors") {
    const auto s12 = TruncationSet::from_elements({1, 2});
    CHECK_THROWS_AS(ghost(wz(s12, ints({1, 1})), 3), std::out_of_range);
    CHECK_THROWS_AS(ghost(WittVector(s12, CoeffRing::fp(2), ints({1, 1})), 1), std::invalid_argument);
    CHECK_THROWS_AS(WittVector(s12, Z, ints({1})), std::invalid_argument);
    // (1, 1/2) is not integral
    CHECK_THROWS_AS(from_ghost(s12, ints({1, 2})), VerificationError);
    CHECK_THROWS_AS(from_ghost(s12, ints({1})), std::invalid_argument);
}

TEST_CASE("addition and multiplication examples") {
    const auto s12 = TruncationSet::from_elements({1, 2});
    const WittVector one = wz(s12, ints({1, 0}));
    CHECK(witt_add(one, one).coords() == ints({2, -1}));
    const WittVector one2(s12, CoeffRing::fp(2), ints({1, 0}));
    CHECK(witt_add(one2, one2).coords() == ints({0, 1}));

    gen::Gen g(1);
    const auto s = TruncationSet::big(6);
    for (int i = 0; i < 10; ++i) {
        const WittVector a = g.witt(s, Z);
        CHECK(gen::same(witt_mul(a, WittVector::one(s, Z)), a));
        CHECK(gen::same(witt_add(a, WittVector::zero(s, Z)), a));
        CHECK(witt_add(a, witt_neg(a)).coords() == std::vector<BigInt>(s.size(), 0));
    }
}

TEST_CASE("mismatched operands are rejected") {
    const WittVector a = WittVector::one(TruncationSet::big(2), Z);
    const WittVector b = WittVector::one(TruncationSet::big(3), Z);
    const WittVector c = WittVector::one(TruncationSet::big(2), CoeffRing::fp(3));
    CHECK_THROWS_AS(witt_add(a, b), std::invalid_argument);
    CHECK_THROWS_AS(witt_mul(a, c), std::invalid_argument);
}

TEST_CASE("sum and product against the explicit Witt polynomials") {
    // s2 = a2 + b2 - a1 b1, s3 = a3 + b3 - a1^2 b1 - a1 b1^2,
    // p2 = a1^2 b2 + a2 b1^2 + 2 a2 b2
    gen::Gen g(2);
    const auto s = TruncationSet::big(3);
    for (int i = 0; i < 100; ++i) {
        const WittVector a = g.witt(s, Z, 20), b = g.witt(s, Z, 20);
        const auto& x = a.coords();
        const auto& y = b.coords();
        const WittVector sum = witt_add(a, b);
        CHECK(sum[1] == x[0] + y[0]);
        CHECK(sum[2] == x[1] + y[1] - x[0] * y[0]);
        CHECK(sum[3] == x[2] + y[2] - x[0] * x[0] * y[0] - x[0] * y[0] * y[0]);
        const WittVector prod = witt_mul(a, b);
        CHECK(prod[1] == x[0] * y[0]);
        CHECK(prod[2] == x[0] * x[0] * y[1] + x[1] * y[0] * y[0] + 2 * x[1] * y[1]);
    }
}

TEST_CASE("ghost map is a ring homomorphism on W_8(Z)") {
    gen::Gen g(8);
    const auto s = TruncationSet::big(8);
    for (int i = 0; i < 200; ++i) {
        const WittVector a = g.witt(s, Z), b = g.witt(s, Z);
        const auto ga = ghost_vector(a), gb = ghost_vector(b);
        const auto gs = ghost_vector(witt_add(a, b)), gp = ghost_vector(witt_mul(a, b));
        for (std::size_t k = 0; k < s.size(); ++k) {
            CHECK(gs[k] == ga[k] + gb[k]);
            CHECK(gp[k] == ga[k] * gb[k]);
        }
    }
}

TEST_CASE("verschiebung examples") {
    const WittVector a = wz(TruncationSet::big(1), ints({7}));
    CHECK(verschiebung(2, a, TruncationSet::from_elements({1, 2})).coords() == ints({0, 7}));

    const CoeffRing f2 = CoeffRing::fp(2);
    std::set<std::vector<BigInt>> image;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            image.insert(verschiebung(2, WittVector(TruncationSet::big(2), f2, ints({x, y})), TruncationSet::big(4))
                             .coords());
    CHECK(image.size() == 4);

    CHECK_THROWS_AS(verschiebung(2, WittVector::one(TruncationSet::big(2), Z), TruncationSet::big(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(verschiebung(0, a, TruncationSet::big(2)), std::invalid_argument);
}

TEST_CASE("verschiebung is additive and has ghost e * w_{n/e}") {
    gen::Gen g(4);
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t e = 1 + g.below(4), n = 1 + g.below(4);
        const CoeffRing ring = g.coin() ? Z : CoeffRing::fp(g.small_prime());
        const auto src = TruncationSet::big(n), dst = TruncationSet::big(e * n);
        const WittVector a = g.witt(src, ring), b = g.witt(src, ring);
        CHECK(gen::same(verschiebung(e, witt_add(a, b), dst),
                        witt_add(verschiebung(e, a, dst), verschiebung(e, b, dst))));
        if (ring.is_integers()) {
            const auto gv = ghost_vector(verschiebung(e, a, dst));
            for (std::uint64_t k = 1; k <= e * n; ++k)
                CHECK(gv[k - 1] == (k % e == 0 ? BigInt(e) * ghost(a, k / e) : BigInt(0)));
        }
    }
}

TEST_CASE("frobenius examples") {
    const WittVector unit = WittVector::one(TruncationSet::big(4), Z);
    CHECK(gen::same(frobenius(2, unit), WittVector::one(TruncationSet::big(2), Z)));

    const WittVector a = wz(TruncationSet::big(1), ints({5}));
    CHECK(frobenius(2, verschiebung(2, a, TruncationSet::big(2))).coords() == ints({10}));

    const WittVector b = wz(TruncationSet::from_elements({1, 3}), ints({0, 1}));
    CHECK(frobenius(3, b).coords() == ints({3}));

    CHECK_THROWS_AS(frobenius(5, unit), std::invalid_argument);
    CHECK_THROWS_AS(frobenius(0, unit), std::invalid_argument);
}

TEST_CASE("frobenius is a ring map and F_d V_d = d") {
    gen::Gen g(6);
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t d = 1 + g.below(4), n = 1 + g.below(5);
        const CoeffRing ring = g.coin() ? Z : CoeffRing::fp(g.small_prime());
        const auto s = TruncationSet::big(d * n);
        const WittVector a = g.witt(s, ring), b = g.witt(s, ring);
        CHECK(gen::same(frobenius(d, witt_add(a, b)), witt_add(frobenius(d, a), frobenius(d, b))));
        CHECK(gen::same(frobenius(d, witt_mul(a, b)), witt_mul(frobenius(d, a), frobenius(d, b))));
        if (ring.is_integers()) {
            const auto gf = ghost_vector(frobenius(d, a));
            for (std::uint64_t k = 1; k <= n; ++k)
                CHECK(gf[k - 1] == ghost(a, d * k));
        }
        const WittVector c = g.witt(TruncationSet::big(n), ring);
        CHECK(gen::same(frobenius(d, verschiebung(d, c, s)), witt_scale(BigInt(d), c)));
    }
}

TEST_CASE("restriction") {
    const WittVector a = wz(TruncationSet::big(3), ints({1, 2, 3}));
    CHECK(restrict(a, TruncationSet::big(1)).coords() == ints({1}));
    CHECK(gen::same(restrict(a, a.truncation()), a));
    CHECK_THROWS_AS(restrict(a, TruncationSet::big(4)), std::invalid_argument);

    // restriction is a ring map
    gen::Gen g(12);
    for (int i = 0; i < 30; ++i) {
        const auto s = TruncationSet::big(6), t = TruncationSet::p_typical(2, 3);
        const WittVector x = g.witt(s, Z), y = g.witt(s, Z);
        CHECK(gen::same(restrict(witt_add(x, y), t), witt_add(restrict(x, t), restrict(y, t))));
        CHECK(gen::same(restrict(witt_mul(x, y), t), witt_mul(restrict(x, t), restrict(y, t))));
    }
}

TEST_CASE("W_n(F_p) has p^n elements forming a group") {
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::uint64_t n = 1; n <= 12; ++n) {
            BigInt total = fp_cardinality(TruncationSet::big(n), p);
            if (total > 4096)
                break;
            const auto s = TruncationSet::big(n);
            const CoeffRing ring = CoeffRing::fp(p);
            const auto count = total.convert_to<std::uint64_t>();
            std::vector<WittVector> all;
            for (std::uint64_t i = 0; i < count; ++i) {
                std::vector<BigInt> c(n);
                std::uint64_t x = i;
                for (auto& v : c) {
                    v = x % p;
                    x /= p;
                }
                all.emplace_back(s, ring, std::move(c));
            }
            std::set<std::vector<BigInt>> distinct;
            gen::Gen g(p * 100 + n);
            for (int k = 0; k < 50; ++k) {
                const WittVector sum = witt_add(all[g.below(count)], all[g.below(count)]);
                for (const auto& c : sum.coords())
                    CHECK((c >= 0 && c < p));
            }
            for (const auto& a : all)
                distinct.insert(a.coords());
            CHECK(BigInt(distinct.size()) == power(p, static_cast<unsigned>(n)));
        }
    }
}

TEST_CASE("p-typical W_s(F_p) is cyclic of order p^s") {
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned s = 1; s <= 4; ++s) {
            const auto t = TruncationSet::p_typical(p, s);
            const WittVector one = WittVector::one(t, CoeffRing::fp(p));
            WittVector acc = one;
            std::uint64_t order = 1;
            while (std::any_of(acc.coords().begin(), acc.coords().end(), [](const BigInt& c) { return c != 0; })) {
                acc = witt_add(acc, one);
                ++order;
            }
            CHECK(BigInt(order) == power(p, s));
        }
}
