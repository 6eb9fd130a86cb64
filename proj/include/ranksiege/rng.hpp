#pragma once

#include <cstdint>
#include <random>

namespace ranksiege {

// Seeded generator with fixed-layout draws. std::mt19937_64 output is
// specified by the standard, and we derive doubles and bounded integers
// ourselves so that a seed reproduces the same stream on every platform
// and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound). bound must be >= 1.
    std::uint64_t uniform_index(std::uint64_t bound) {
        // Multiply-shift; bias is O(bound / 2^64), irrelevant at desk scale.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * bound) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace ranksiege
