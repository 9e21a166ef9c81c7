#pragma once
/** @file sampling.hpp
 *  @brief Counter-based p-random subsets. Bit-exact scheme in docs/sampling.md.
 */

#include <cstdint>

#include "sumfree/subset.hpp"

namespace sumfree {

constexpr std::uint64_t fmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t trial_salt = 0xA0761D6478BD642Full;
inline constexpr std::uint64_t element_salt = 0xE7037ED1A0B428DBull;

/// Uniform double in [0, 1) for (seed, trial, element).
inline double sample_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t e)
{
    std::uint64_t z = fmix64(seed ^ fmix64(trial ^ trial_salt) ^ fmix64(e ^ element_salt));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Subset sample_subset(const GroupPtr& G, double p, std::uint64_t master_seed, std::uint64_t trial_index);

} // namespace sumfree
