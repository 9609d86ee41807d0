#pragma once

#include <cstdint>

#include "jetcheck/rational.hpp"

namespace jetcheck {

// splitmix64, the usual finalizer-style generator. Every random draw in this
// library is a pure function of (seed, counters), so batteries and samplers
// give identical results regardless of thread count or evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(seed ^ splitmix64(a + 0x7f4a7c15ULL));
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix(mix(seed, a), b);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(seed, a, b), c);
}

// Sequential stream for places where a counter scheme would be overkill.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, n). Plain modulo; the tiny bias is irrelevant here and
    // keeping the draw a single call keeps it reproducible forever.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1u) != 0; }

private:
    std::uint64_t state_;
};

// Uniform integer in [-bound, bound] as a deterministic function of
// (seed, sample index, coordinate index).
inline long long counter_int_in_sym(std::uint64_t seed, std::uint64_t sample,
                                    std::uint64_t coord, long long bound) {
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
    return static_cast<long long>(mix(seed, sample, coord) % span) - bound;
}

} // namespace jetcheck
