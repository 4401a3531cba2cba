#pragma once

#include <array>
#include <cstdint>

namespace photonstat::core {

// Project-wide random number generator: xoshiro256++ seeded through
// splitmix64, with named substreams derived from (seed, index). All variate
// samplers are implemented here rather than taken from <random> so that a
// given (seed, parameters) pair produces the same stream on every platform
// and release. Substreams are independent for distinct indices and may be
// consumed concurrently.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Substream i of this generator. Children of distinct (seed, index)
    // pairs are statistically independent; the derivation is
    //   child_seed = splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15)
    // applied twice, so nested substream chains stay decorrelated.
    Rng substream(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Exponential with the given mean (mean > 0).
    double exponential(double mean);

    // Standard normal via Box-Muller (no caching, two uniforms per call).
    double normal();
    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    // Poisson-distributed count. Multiplication method for small means,
    // Hormann's PTRS transformed rejection for mean >= 10.
    std::uint64_t poisson(double mean);

    // Number of Bernoulli(p) trials up to and including the first success
    // (support 1, 2, ...). Returns no_success for p <= 0.
    static constexpr std::uint64_t no_success = ~0ULL;
    std::uint64_t geometric_trials(double p);

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace photonstat::core
