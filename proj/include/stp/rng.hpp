#pragma once

#include <cstdint>
#include <random>

namespace stp {

// Seed mixing function shared by every randomized component: worker i of a
// run with base seed s uses engine seed derived_seed(s, i). splitmix64
// finalizer (Steele/Lea/Flood constants).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derived_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// mt19937_64 with raw-bit draws only; std distributions are not bit-portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    int coin() { return static_cast<int>(engine_() >> 63); }

    // uniform in [0,1) with 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace stp
