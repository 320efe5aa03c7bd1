#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace uwam {

// xorshift64* with the usual shift triple (12, 25, 27) and multiplier
// 0x2545F4914F6CDD1D. The all-zero seed is remapped to a fixed odd constant
// so every stream is well defined.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // [0, 1)
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  // standard normal, Box-Muller
  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// splitmix-style combiner for deriving independent sub-stream seeds
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Fisher-Yates permutation of 0..n-1 driven by xorshift64*.
inline std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> p(std::size_t(n), 0);
  for (int i = 0; i < n; ++i) p[std::size_t(i)] = i;
  Xorshift64Star rng(seed);
  for (int i = n - 1; i > 0; --i) {
    int j = int(rng.next() % std::uint64_t(i + 1));
    std::swap(p[std::size_t(i)], p[std::size_t(j)]);
  }
  return p;
}

}  // namespace uwam
