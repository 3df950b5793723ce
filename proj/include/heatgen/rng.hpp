#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace heatgen {

// 64-bit FNV-1a over the bytes of a string. Stable across platforms, used to
// derive per-building seeds that do not depend on dataset insertion order.
std::uint64_t fnv1a64(std::string_view data);

// SplitMix64 finalizer, used for seed mixing.
std::uint64_t splitmix64(std::uint64_t x);

// Combines two seed components into one stream seed.
std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b);

// Stream tags so that independent uses of the same building seed never share
// a random stream.
inline constexpr std::uint64_t kSeedTagOccupancy = 0x6f636375;
inline constexpr std::uint64_t kSeedTagSetpoints = 0x73657470;
inline constexpr std::uint64_t kSeedTagSelection = 0x73656c63;
inline constexpr std::uint64_t kSeedTagRepetition = 0x72657065;

// Seeded random stream. The engine is std::mt19937_64 (its output sequence is
// fixed by the standard); uniform and normal variates are derived here rather
// than with std::*_distribution, whose output differs between standard library
// implementations. Identical seeds therefore give identical variates on every
// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n), rejection sampled.
    std::uint64_t below(std::uint64_t n);

    // Normal variate via Box-Muller; consumes exactly two uniforms per call.
    double normal(double mean, double stddev);

private:
    std::mt19937_64 engine_;
};

// Deterministic Fisher-Yates shuffle driven by the given stream.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace heatgen
