#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace irsim {

// Seed derivation and random draws used everywhere results must be bit-exact
// across platforms and worker counts. Engines are std::mt19937_64 (its output
// sequence is fixed by the standard); the floating-point draws below avoid
// std::uniform_real_distribution and friends, whose output is
// implementation-defined.

inline constexpr std::uint64_t seed_increment = 0x9E3779B97F4A7C15ull;

// splitmix64 output scramble.
inline std::uint64_t scramble64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D4BCB2D3A46BD5ull;
    z ^= z >> 31;
    return z;
}

// Child seed `index` of `base`. Equals the (index+1)-th splitmix64 output for
// state `base`, so distinct indices give independent, well-mixed seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return scramble64(base + (index + 1) * seed_increment);
}

class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Unbiased uniform integer in [0, n), n >= 1. Rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = eng_();
            if (r >= threshold)
                return r % n;
        }
    }

    // Standard normal via Box-Muller (pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        while (u1 <= 0.0)
            u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace irsim
