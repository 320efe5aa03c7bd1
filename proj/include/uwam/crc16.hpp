#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwam {

using BitVec = std::vector<std::uint8_t>;

// CRC-16/CCITT-FALSE over a bit sequence, most significant bit first:
// polynomial 0x1021, initial register 0xFFFF, no reflection, no final xor.
inline std::uint16_t crc16(const BitVec& bits) {
  std::uint16_t reg = 0xFFFF;
  for (std::uint8_t b : bits) {
    const std::uint16_t top = std::uint16_t((reg >> 15) & 1u);
    reg = std::uint16_t(reg << 1);
    if (top ^ (b & 1u)) reg ^= 0x1021;
  }
  return reg;
}

inline BitVec crc16_attach(const BitVec& payload, int expected_len) {
  if (int(payload.size()) != expected_len)
    throw std::invalid_argument("crc16_attach: payload must be " +
                                std::to_string(expected_len) + " bits, got " +
                                std::to_string(payload.size()));
  BitVec out = payload;
  const std::uint16_t c = crc16(payload);
  for (int i = 15; i >= 0; --i) out.push_back(std::uint8_t((c >> i) & 1u));
  return out;
}

// Running the register over message + appended CRC leaves it at zero.
inline bool crc16_check(const BitVec& frame) {
  if (frame.size() < 16) return false;
  return crc16(frame) == 0;
}

}  // namespace uwam
