#include "nyq/prbs.hpp"

#include <stdexcept>

namespace nyq {

Prbs13::Prbs13(std::uint16_t register_init) : reg_(register_init & 0x1fffu) {
    if (reg_ == 0) throw std::invalid_argument("Prbs13: zero register is a fixed point");
}

int Prbs13::next() {
    const int out = reg_ & 1;
    // x^13 + x^4 + x^3 + x + 1: s[n+13] = s[n+4] ^ s[n+3] ^ s[n+1] ^ s[n]
    const std::uint16_t fb =
        ((reg_ >> 4) ^ (reg_ >> 3) ^ (reg_ >> 1) ^ reg_) & 1u;
    reg_ = static_cast<std::uint16_t>((reg_ >> 1) | (fb << 12));
    return out;
}

std::vector<std::uint8_t> Prbs13::bits(std::size_t count) {
    if (count < 1) throw std::invalid_argument("Prbs13: count must be >= 1");
    std::vector<std::uint8_t> out(count);
    for (auto& b : out) b = static_cast<std::uint8_t>(next());
    return out;
}

}  // namespace nyq
