#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace kmernet {

// std::uniform_*_distribution and std::shuffle are implementation-defined;
// these helpers only rely on the fully specified mt19937_64 output so that
// seeded results are identical across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n). n must be positive.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// Uniform real in [0, 1) with 53 bits of precision.
double uniform_unit(Rng& rng);

/// Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = uniform_index(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace kmernet
