#pragma once

// Small hand-rolled generators for the property tests. Everything is driven
// by one seeded engine so failures replay exactly.

#include <cstdint>
#include <random>
#include <vector>

#include "ktrunc/exactalg.hpp"
#include "ktrunc/witt.hpp"

namespace gen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long long between(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(rng_);
    }
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
    bool coin() { return below(2) == 1; }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

    std::uint64_t small_prime() { return pick(std::vector<std::uint64_t>{2, 3, 5, 7}); }

    ktrunc::IntMatrix int_matrix(std::size_t rows, std::size_t cols, long long spread) {
        ktrunc::IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = between(-spread, spread);
        return m;
    }

    ktrunc::FpMatrix fp_matrix(std::size_t rows, std::size_t cols, std::uint64_t p) {
        ktrunc::FpMatrix m(rows, cols, p);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m(r, c) = below(p);
        return m;
    }

    ktrunc::WittVector witt(const ktrunc::TruncationSet& s, ktrunc::CoeffRing ring, long long spread = 9) {
        std::vector<ktrunc::BigInt> c(s.size());
        for (auto& x : c)
            x = ring.is_integers() ? between(-spread, spread) : static_cast<long long>(below(ring.prime));
        return ktrunc::WittVector(s, ring, std::move(c));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline bool same(const ktrunc::WittVector& a, const ktrunc::WittVector& b) {
    return a.truncation() == b.truncation() && a.coords() == b.coords();
}

}  // namespace gen
