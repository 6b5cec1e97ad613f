#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace choicewalk {

using Rng = std::mt19937_64;

// Used whenever the caller does not pick a seed, so default runs reproduce.
inline constexpr std::uint64_t kDefaultSeed = 20240901;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed of stream `stream` under base seed `base`. Trial i of a run uses
// stream i, so results do not depend on which worker ran the trial.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

inline Rng make_stream(std::uint64_t base, std::uint64_t stream) { return Rng(stream_seed(base, stream)); }

// Uniform on [0, bound), bound >= 1. bound == 1 consumes no randomness.
inline std::size_t uniform_below(Rng& rng, std::size_t bound) {
    if (bound == 1) return 0;
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

} // namespace choicewalk
