#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ldps {

/// Seeded random stream. All randomized operations in the library draw from
/// this wrapper only, so a fixed seed yields bit-identical results everywhere
/// (no std::*_distribution, whose output differs between standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). Rejection sampling, unbiased.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = (UINT64_MAX / span) * span;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return static_cast<std::size_t>(v % span);
    }

    /// Standard normal deviate (Box-Muller, pair cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    /// Decorrelated child seed for stream `stream` of a master seed
    /// (per-repeat seeds in benchmarks, per-dataset seeds in harnesses).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace ldps
