#pragma once

#include <cstdint>
#include <vector>

namespace nyq {

/**
 * @brief Maximal-length PRBS generator of degree 13 (period 2^13 - 1 = 8191).
 *
 * Fibonacci LFSR with feedback polynomial x^13 + x^4 + x^3 + x + 1.
 * The register never reaches the all-zero state; a zero seed is rejected.
 */
class Prbs13 {
  public:
    static constexpr std::uint32_t kPeriod = 8191;

    explicit Prbs13(std::uint16_t register_init);

    /// Next bit; advances the register.
    int next();

    /// Generate `count` bits.
    std::vector<std::uint8_t> bits(std::size_t count);

    std::uint16_t state() const { return reg_; }

  private:
    std::uint16_t reg_;
};

}  // namespace nyq
