#pragma once

#include <cstdint>

#include "spt/matrix.hpp"

namespace spt {

// Deterministic, platform-independent generator (splitmix64). Results depend
// only on the seed, so sampled instances can be frozen into golden tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    long next_int(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // p/q with p in [lo, hi], q in [1, max_den].
    Rational next_rational(long lo = -9, long hi = 9, long max_den = 9) {
        return rat(next_int(lo, hi), next_int(1, max_den));
    }

    Rational next_positive_rational(long hi = 9, long max_den = 9) {
        return rat(next_int(1, hi), next_int(1, max_den));
    }

    RMatrix next_matrix(std::size_t rows, std::size_t cols, long lo = -9, long hi = 9,
                        long max_den = 9) {
        RMatrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) a(i, j) = next_rational(lo, hi, max_den);
        return a;
    }

    // Independent stream for a sub-task; used to shard trial ranges.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x517cc1b727220a95ULL * (index + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

}  // namespace spt
