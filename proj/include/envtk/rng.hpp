// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace envtk {

// mt19937_64 output is fully specified by the standard; extracting doubles by
// hand keeps streams identical across standard-library implementations
// (uniform_real_distribution is not portable).

/// Uniform double in [0, 1).
inline double uniform_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_real(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(gen);
}

/// Uniform integer in {0, ..., n-1}.
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
    return gen() % n;
}

} // namespace envtk
