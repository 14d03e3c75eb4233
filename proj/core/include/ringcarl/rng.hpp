#ifndef RINGCARL_RNG_HPP
#define RINGCARL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

// Deterministic, platform-independent random numbers. A splitmix64 stream
// is plenty for ensemble initialization and keeps seeded runs bit-stable,
// which the sweep machinery relies on.
namespace ringcarl::rng {

constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += golden;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Independent per-cell seed for sweep grids: splitmix64 finalizer over
// (seed, row, column).
inline std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
    std::uint64_t s = mix64(seed + golden * (row + 1));
    return mix64(s + golden * (col + 1));
}

} // namespace ringcarl::rng

#endif
