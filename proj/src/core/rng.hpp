#pragma once

#include <cmath>
#include <cstdint>

namespace dslit {

// splitmix64 finalizer (Steele/Lea/Flood; Vigna's fixed-increment variant).
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Counter-based substream: trial i gets an independent generator derived from
// (seed, i), so parallel evaluation order cannot change any draw.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index)
{
    return SplitMix64(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL)));
}

// Exact Poisson sampling by inversion. Means above 400 are drawn as a sum of
// independent chunks so e^{-mean} never underflows; no normal approximation.
inline std::uint64_t sample_poisson(SplitMix64& rng, double mean)
{
    if (!(mean > 0.0))
        return 0;
    std::uint64_t total = 0;
    double remaining = mean;
    while (remaining > 0.0) {
        const double lambda = remaining > 400.0 ? 400.0 : remaining;
        remaining -= lambda;
        const double u = rng.next_double();
        double p = std::exp(-lambda);
        double cdf = p;
        std::uint64_t k = 0;
        while (u > cdf && k < 100000) {
            ++k;
            p *= lambda / static_cast<double>(k);
            cdf += p;
        }
        total += k;
    }
    return total;
}

} // namespace dslit
