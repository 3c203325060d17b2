#pragma once

#include <cstdint>

namespace ksrd {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over <random> engines because
// the standard distributions are not bit-reproducible across implementations;
// every derived quantity below is a fixed function of the raw 64-bit output,
// so seeded runs and generated instances are identical on every platform.
struct SplitMix64 {
    std::uint64_t state = 0;

    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound); bound > 0. Multiply-shift reduction.
    std::uint64_t next_below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
    }

    int next_index(int n) {
        return static_cast<int>(next_below(static_cast<std::uint64_t>(n)));
    }
};

inline std::uint64_t mix_bits(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stable combination of up to three seeds into one stream seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    std::uint64_t h = mix_bits(a + 0x9E3779B97F4A7C15ULL);
    h = mix_bits(h ^ (b + 0x9E3779B97F4A7C15ULL));
    h = mix_bits(h ^ (c + 0x9E3779B97F4A7C15ULL));
    return h;
}

} // namespace ksrd
