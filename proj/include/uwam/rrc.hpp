#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace uwam {

// Root-raised-cosine pulse sampled at fs, normalized to unit energy.
// Support is [-half_len, half_len]; taps[half_len] is the peak.
struct RrcFilter {
  double rolloff = 0.2;
  int half_len = 160;
  int sps = 32;  // samples per symbol
  std::vector<double> taps;

  double at(int i) const { return taps[std::size_t(i + half_len)]; }
  int lo() const { return -half_len; }
  int hi() const { return half_len; }
};

inline RrcFilter rrc_design(double rolloff = 0.2, int half_len = 160, int sps = 32) {
  RrcFilter f{rolloff, half_len, sps, {}};
  f.taps.resize(std::size_t(2 * half_len + 1));
  const double a = rolloff;
  const double pi = std::numbers::pi;
  double energy = 0.0;
  for (int i = -half_len; i <= half_len; ++i) {
    const double t = double(i) / double(sps);  // symbol units
    double v;
    if (i == 0) {
      v = 1.0 - a + 4.0 * a / pi;
    } else if (a > 0.0 && std::abs(std::abs(4.0 * a * t) - 1.0) < 1e-9) {
      v = (a / std::sqrt(2.0)) * ((1.0 + 2.0 / pi) * std::sin(pi / (4.0 * a)) +
                                  (1.0 - 2.0 / pi) * std::cos(pi / (4.0 * a)));
    } else {
      const double num =
          std::sin(pi * t * (1.0 - a)) + 4.0 * a * t * std::cos(pi * t * (1.0 + a));
      const double den = pi * t * (1.0 - 16.0 * a * a * t * t);
      v = num / den;
    }
    f.taps[std::size_t(i + half_len)] = v;
    energy += v * v;
  }
  const double scale = 1.0 / std::sqrt(energy);
  for (auto& v : f.taps) v *= scale;
  return f;
}

}  // namespace uwam
