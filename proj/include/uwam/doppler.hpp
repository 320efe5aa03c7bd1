#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "uwam/fft.hpp"
#include "uwam/params.hpp"

namespace uwam {

// Undo the Doppler time scale: resample by 1/a1 about the segment midpoint
// (linear interpolation at Fds) and remove the carrier offset (a1-1)*fc.
inline std::vector<cplx> doppler_correct(const std::vector<cplx>& seg, double a1,
                                         const ModemConfig& cfg) {
  if (a1 == 1.0) return seg;
  const double mid = 0.5 * double(seg.size() - 1);
  const double wofs = -2.0 * std::numbers::pi * cfg.fc * (a1 - 1.0) / cfg.Fds();
  std::vector<cplx> out(seg.size());
  for (std::size_t n = 0; n < seg.size(); ++n) {
    const double u = mid + (double(n) - mid) / a1;
    const long k = long(std::floor(u));
    const double frac = u - double(k);
    cplx v{};
    if (k >= 0 && std::size_t(k) < seg.size()) v += (1.0 - frac) * seg[std::size_t(k)];
    if (k + 1 >= 0 && std::size_t(k + 1) < seg.size()) v += frac * seg[std::size_t(k + 1)];
    out[n] = v * std::polar(1.0, wofs * (u - mid));
  }
  return out;
}

// Residual-frequency estimate from equalized symbols against the pilot:
// argmax over [-range_hz, range_hz] of |sum_n y(n) p(n) e^{-j2pi f n / Fd}|.
// Dichotomous search: the bracket halves every step toward the larger of two
// probes either side of the centre, so the quantization floor after k
// halvings is range_hz / 2^k.
inline double fine_doppler(const std::vector<cplx>& y, const std::vector<double>& pilot,
                           double range_hz, const ModemConfig& cfg, int halvings = 14) {
  const std::size_t n = std::min(y.size(), pilot.size());
  auto mag = [&](double f) {
    const double w = -2.0 * std::numbers::pi * f / cfg.Fd;
    cplx acc{};
    for (std::size_t i = 0; i < n; ++i)
      acc += y[i] * pilot[i] * std::polar(1.0, w * double(i));
    return std::abs(acc);
  };
  double lo = -range_hz, hi = range_hz;
  for (int it = 0; it < halvings; ++it) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.25 * (hi - lo);
    if (mag(c - h) >= mag(c + h)) hi = c;
    else lo = c;
  }
  return 0.5 * (lo + hi);
}

// Phase-ramp removal with the phase pinned at the packet centre.
inline void remove_ramp_inplace(std::vector<cplx>& y, double f_hz, const ModemConfig& cfg) {
  if (f_hz == 0.0) return;
  const double w = -2.0 * std::numbers::pi * f_hz / cfg.Fd;
  const double centre = 0.5 * double(y.size() - 1);
  for (std::size_t n = 0; n < y.size(); ++n)
    y[n] *= std::polar(1.0, w * (double(n) - centre));
}

}  // namespace uwam
