#pragma once

#include <cstdint>

namespace asaw::rng {

// Counter-based generator: every variate is a pure function of
// (seed, stream, counters), so realizations do not depend on iteration
// order or worker count.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Stream tags keep independent uses of the same user seed decorrelated.
inline constexpr std::uint64_t kStreamDisorder = 0x5d1507a3u;
inline constexpr std::uint64_t kStreamShortcut = 0x2c9277b5u;
inline constexpr std::uint64_t kStreamEnergy   = 0x6a09e667u;
inline constexpr std::uint64_t kStreamSynth    = 0x3c6ef372u;

inline std::uint64_t hash3(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(seed);
    h = combine(h, a);
    h = combine(h, b);
    h = combine(h, c);
    return h;
}

// Uniform double in [0, 1).
inline double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
                  std::uint64_t b = 0) {
    return static_cast<double>(hash3(seed, stream, a, b) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t a, std::uint64_t b,
                                   std::uint64_t n) {
    return hash3(seed, stream, a, b) % n;
}

} // namespace asaw::rng
