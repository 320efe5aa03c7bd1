#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwam/crc16.hpp"

namespace uwam {

static_assert(std::endian::native == std::endian::little,
              "raw float32 signal files are little-endian");

// Raw mono float32 little-endian at fs.
inline void write_signal_f32(const std::string& path, const std::vector<double>& sig) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::vector<float> buf(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) buf[i] = float(sig[i]);
  const std::size_t n = std::fwrite(buf.data(), sizeof(float), buf.size(), f);
  std::fclose(f);
  if (n != buf.size()) throw std::runtime_error("short write: " + path);
}

inline std::vector<double> read_signal_f32(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::fseek(f, 0, SEEK_END);
  const long bytes = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  std::vector<float> buf(std::size_t(bytes) / sizeof(float));
  const std::size_t n = std::fread(buf.data(), sizeof(float), buf.size(), f);
  std::fclose(f);
  if (n != buf.size()) throw std::runtime_error("short read: " + path);
  return {buf.begin(), buf.end()};
}

inline std::string bits_to_hex(const BitVec& bits) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve((bits.size() + 3) / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4 && i + j < bits.size(); ++j)
      v |= (bits[i + j] & 1) << (3 - j);
    out.push_back(digits[v]);
  }
  return out;
}

inline BitVec hex_to_bits(const std::string& hex, int nbits) {
  BitVec bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("hex_to_bits: bad digit");
    for (int j = 3; j >= 0; --j) bits.push_back(std::uint8_t((v >> j) & 1));
  }
  bits.resize(std::size_t(nbits), 0);
  return bits;
}

}  // namespace uwam
