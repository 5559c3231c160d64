#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nyq {

/// splitmix64 step; used to derive decorrelated per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for an independent counter-indexed stream derived from (seed, index).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0xd6e8feb86659fd93ULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

/**
 * @brief Deterministic standard-normal generator.
 *
 * mt19937_64 (bit-exact across platforms) feeding a Box-Muller transform;
 * std::normal_distribution is implementation-defined and is avoided so that
 * seeded runs reproduce byte-identically.
 */
class NormalRng {
  public:
    explicit NormalRng(std::uint64_t seed) : eng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1)
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace nyq
