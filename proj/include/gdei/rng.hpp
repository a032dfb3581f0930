#pragma once

#include <cstdint>
#include <random>

namespace gdei {

// All randomness in the library flows through these helpers on top of
// std::mt19937_64, whose output sequence is pinned by the standard.
// Distribution transforms are hand-rolled because the std:: distribution
// classes are not bit-portable across standard libraries.

// Uniform double in [0, 1), 53-bit resolution.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in [low, high).
inline double uniform_in(std::mt19937_64& rng, double low, double high) {
    return low + uniform_unit(rng) * (high - low);
}

// Standard normal via Box-Muller (cosine branch). Consumes exactly two
// draws per call; the first is shifted into (0, 1] so log never sees 0.
double normal_unit(std::mt19937_64& rng);

// Uniform integer in [0, bound) by rejection; bound must be >= 1.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace gdei
