#pragma once

#include <cstdint>
#include <random>

namespace etmrs {

/// All stochastic operations take an explicit engine; nothing in the library
/// reads ambient randomness.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer, used to spread small seeds/counters over 64 bits.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Engine for substream `stream` of a master seed. Substreams are indexed by
/// a plain counter, so a run partitioned over any number of workers draws the
/// same per-stream sequences.
inline Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream + 1)));
}

}  // namespace etmrs
