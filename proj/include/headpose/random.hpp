#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace headpose {

/// Seeded generator with self-contained distributions, so identical seeds
/// give identical streams regardless of standard-library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(static_cast<std::uint64_t>(n) * uniform());
    }

    /// Standard normal via Box-Muller (one draw per call, no caching).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace headpose
