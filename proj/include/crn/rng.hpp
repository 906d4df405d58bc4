#pragma once

#include <cstdint>

namespace crn {

/// Deterministic 64-bit PRNG (splitmix64). Hand-rolled rather than a
/// std::random distribution so that traces are bit-identical across
/// standard libraries and platforms for the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Index into a cumulative weight table (weights need not be normalized).
    int pick(const double* cumulative, int n) {
        double u = uniform01() * cumulative[n - 1];
        for (int i = 0; i < n; ++i)
            if (u < cumulative[i]) return i;
        return n - 1;
    }

private:
    std::uint64_t state_;
};

}  // namespace crn
