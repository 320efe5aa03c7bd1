#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwam {

inline constexpr int kGoldDegree = 10;
inline constexpr int kGoldLength = (1 << kGoldDegree) - 1;  // 1023
inline constexpr int kMaxUsers = 33;

namespace detail {

// Fibonacci LFSR m-sequence, all-ones start. taps lists the exponents t of the
// recurrence s[n + degree] = xor_t s[n + t], taken from the generator
// polynomial x^degree + ... + x^t + ... + 1.
inline std::vector<std::uint8_t> lfsr_mseq(std::initializer_list<int> taps) {
  std::vector<std::uint8_t> s(kGoldDegree, 1), out;
  out.reserve(kGoldLength);
  for (int n = 0; n < kGoldLength; ++n) {
    out.push_back(s[0]);
    std::uint8_t fb = 0;
    for (int t : taps) fb = std::uint8_t(fb ^ s[std::size_t(t)]);
    s.erase(s.begin());
    s.push_back(fb);
  }
  return out;
}

}  // namespace detail

// Preferred pair x^10 + x^3 + 1 and x^10 + x^8 + x^3 + x^2 + 1.
inline const std::vector<std::uint8_t>& gold_parent_a() {
  static const std::vector<std::uint8_t> seq = detail::lfsr_mseq({0, 3});
  return seq;
}

inline const std::vector<std::uint8_t>& gold_parent_b() {
  static const std::vector<std::uint8_t> seq = detail::lfsr_mseq({0, 2, 3, 8});
  return seq;
}

// Member u of the Gold family: parent a xor (parent b rotated by u-1 chips).
inline std::vector<std::uint8_t> gold_sequence(int user) {
  if (user < 1 || user > kMaxUsers)
    throw std::out_of_range("gold_sequence: user must be in 1.." +
                            std::to_string(kMaxUsers));
  const auto& a = gold_parent_a();
  const auto& b = gold_parent_b();
  std::vector<std::uint8_t> g(kGoldLength);
  const int r = user - 1;
  for (int i = 0; i < kGoldLength; ++i)
    g[std::size_t(i)] = std::uint8_t(a[std::size_t(i)] ^ b[std::size_t((i + r) % kGoldLength)]);
  return g;
}

// First n chips mapped 0 -> +1, 1 -> -1.
inline std::vector<double> gold_pilot(int user, int n = 600) {
  const auto g = gold_sequence(user);
  if (n > kGoldLength) throw std::out_of_range("gold_pilot: pilot longer than parent");
  std::vector<double> p(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i) p[std::size_t(i)] = g[std::size_t(i)] ? -1.0 : 1.0;
  return p;
}

}  // namespace uwam
