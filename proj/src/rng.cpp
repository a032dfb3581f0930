#include "gdei/rng.hpp"

#include <cmath>
#include <numbers>

namespace gdei {

double normal_unit(std::mt19937_64& rng) {
    // u1 in (0, 1]: add 1 before scaling so log(u1) is finite.
    double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
    // Mask to the next power of two, reject out-of-range draws. Unbiased
    // and reproducible for any bound.
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t draw = rng() & mask;
        if (draw < bound) return draw;
    }
}

}  // namespace gdei
