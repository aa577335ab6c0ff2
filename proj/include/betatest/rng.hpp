#pragma once

#include <cstdint>
#include <random>

namespace betatest {

/// One step of the splitmix64 sequence; mutates the state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic per-stream engine: the draws depend only on (seed, stream),
/// never on which worker thread runs the stream. Stream indices used by the
/// Monte Carlo harness are the replicate indices; kSigmaStream is reserved
/// for model-level randomness (Model 3's diagonal).
inline std::mt19937_64 substream_engine(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xA3EC4E93C369A237ULL * (stream + 1));
    std::seed_seq seq{
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state))};
    return std::mt19937_64(seq);
}

inline constexpr std::uint64_t kSigmaStream = 0xFFFFFFFFFFFFFFFFULL;

}  // namespace betatest
