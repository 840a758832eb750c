#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace invctl {

/// Seedable, portable random source.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the
/// standard). The seed is first mixed with splitmix64 so that consecutive
/// per-path seeds (base_seed + index) give well separated streams. Uniform
/// and exponential variates are produced here rather than through the
/// <random> distributions, whose algorithms differ between standard
/// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace invctl
