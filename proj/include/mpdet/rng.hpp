#pragma once

// Stateless counter-based random source. Every word is a pure function of
// (seed, stream, trial, coordinate), so trials can be evaluated in any order
// and on any number of threads without changing a single bit of output.

#include <cstdint>

namespace mpdet {

/// SplitMix64 finalizer; bijective on 64-bit words with full avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// One pseudorandom 64-bit word per (seed, stream, trial, coordinate) key.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial,
                                  std::uint64_t coordinate) {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ stream);
    h = mix64(h ^ trial);
    h = mix64(h ^ coordinate);
    return h;
}

/// Maps a 64-bit word to the open interval (0, 1): 53 uniform bits, offset by
/// half a step so 0 and 1 are never produced.
inline double unit_open(std::uint64_t word) {
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace mpdet
