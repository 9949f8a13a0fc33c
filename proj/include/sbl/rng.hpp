#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace sbl {

// Seed derivation: one splitmix64 step evaluated at `stream`.
// trial seed = splitmix64_at(master_seed, trial_index); the map is a bijection
// per stream index, so distinct trials get decorrelated generator states.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic RNG facade. mt19937_64 is fully specified by the standard and
// the distributions below are implemented here rather than via std::
// distributions, so streams are byte-stable across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller; consumes exactly two uniforms per call.
    double normal(double mean, double stddev) {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();  // guard log(0)
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sbl
