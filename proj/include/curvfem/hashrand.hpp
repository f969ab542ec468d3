#pragma once

#include <cstdint>

namespace curvfem {

/// Counter-based pseudo random numbers (splitmix64 finalizer).  Every draw
/// is a pure function of (seed, stream, counter), so mesh generation is
/// reproducible regardless of evaluation order and platform.
namespace hashrand {

constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return mix(mix(mix(seed) ^ stream) ^ counter);
}

/// Uniform double in [0, 1) from the top 53 bits of the draw.
constexpr double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(draw(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Uniform double in (-1, 1).
constexpr double uniform_sym(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return 2.0 * uniform01(seed, stream, counter) - 1.0;
}

}  // namespace hashrand
}  // namespace curvfem
