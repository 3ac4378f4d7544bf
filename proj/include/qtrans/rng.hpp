#pragma once

#include <cstdint>

namespace qtrans {

// SplitMix64, the splittable generator behind java.util.SplittableRandom.
// The Monte Carlo engine runs one instance per (seed, link, trial) substream,
// so results do not depend on the order trials are executed in.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return next_double() < p; }

private:
    std::uint64_t state_;
};

// SplitMix64 finalizer, used as an avalanche when deriving substream keys.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic substream key for (seed, link, trial).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t link, std::uint64_t trial) noexcept {
    const std::uint64_t k = mix64(seed ^ (0x9e3779b97f4a7c15ull * (link + 1)));
    return mix64(k ^ (0xbf58476d1ce4e5b9ull * (trial + 1)));
}

}  // namespace qtrans
