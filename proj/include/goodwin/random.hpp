#pragma once

#include <cstdint>
#include <random>

namespace goodwin {

/// splitmix64 mixing step; used to derive independent substream seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/**
 * Deterministic per-task engine: the stream for (seed, task) does not
 * depend on how many other tasks ran before it, so Monte Carlo results
 * are reproducible under any scheduling.
 */
[[nodiscard]] inline std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(task_index)));
}

}  // namespace goodwin
