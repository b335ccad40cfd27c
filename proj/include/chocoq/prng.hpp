#pragma once

#include <cstdint>
#include <string_view>

namespace chocoq {

/// SplitMix64 counter-based generator. All randomness in the library flows
/// through this type so results are bit-reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of entropy.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection-free scaling (bound <= 2^32
    /// keeps the modulo bias below 2^-32, negligible at desk scale).
    uint64_t next_below(uint64_t bound) { return next_u64() % bound; }

    /// Uniform double in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    uint64_t state_;
};

/// Derives a named sub-seed from a master seed, so that e.g. the optimizer
/// and the sampler consume independent streams of one --seed.
inline uint64_t derive_seed(uint64_t master, std::string_view stream) {
    uint64_t h = 0xcbf29ce484222325ULL ^ master;
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return SplitMix64(h).next_u64();
}

} // namespace chocoq
