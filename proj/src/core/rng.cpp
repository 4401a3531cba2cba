#include "photonstat/core/rng.hpp"

#include <cmath>

namespace photonstat::core {

namespace {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += golden_gamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
}

Rng Rng::substream(std::uint64_t index) const {
    std::uint64_t s = seed_ + (index + 1) * golden_gamma;
    (void)splitmix64(s);
    std::uint64_t child = splitmix64(s);
    return Rng(child);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double mean) {
    // 1 - u is in (0, 1], so the log is finite.
    return -mean * std::log1p(-uniform());
}

double Rng::normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::uint64_t Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        // Multiplication method (Knuth).
        const double limit = std::exp(-mean);
        double prod = 1.0;
        std::uint64_t k = 0;
        while (true) {
            prod *= uniform();
            if (prod <= limit) return k;
            ++k;
        }
    }
    // PTRS transformed rejection (Hormann 1993).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (kf < 0.0) continue;
        const auto k = static_cast<std::uint64_t>(kf);
        if (us >= 0.07 && v <= v_r) return k;
        if (us < 0.013 && v > us) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            -mean + kf * loglam - std::lgamma(kf + 1.0)) {
            return k;
        }
    }
}

std::uint64_t Rng::geometric_trials(double p) {
    if (p <= 0.0) return no_success;
    if (p >= 1.0) {
        (void)uniform();  // keep draw count independent of p
        return 1;
    }
    const double u = uniform();
    const double k = std::floor(std::log1p(-u) / std::log1p(-p));
    return static_cast<std::uint64_t>(k) + 1;
}

}  // namespace photonstat::core
