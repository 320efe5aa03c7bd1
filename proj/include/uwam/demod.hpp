#pragma once

#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "uwam/fft.hpp"
#include "uwam/params.hpp"
#include "uwam/rrc.hpp"

namespace uwam {

// Complex demodulation: carrier mix-down, RRC matched filter, decimation by
// K to the baseband rate Fds. Output sample n corresponds to passband index
// n*K; edges are treated as zero.
inline std::vector<cplx> demodulate(const std::vector<double>& r, const RrcFilter& g,
                                    const ModemConfig& cfg) {
  const long len = long(r.size());
  const long out_len = len / cfg.K;
  std::vector<cplx> rb(std::size_t(out_len), cplx{});

  // fc/fs is rational with a small period; tabulate e^{-j 2 pi (fc/fs) m}.
  const long fs_i = std::lround(cfg.fs);
  const long fc_i = std::lround(cfg.fc);
  const long period = fs_i / std::gcd(fs_i, fc_i);
  std::vector<cplx> carrier(std::size_t(period), cplx{});
  for (long m = 0; m < period; ++m) {
    const double a = -2.0 * std::numbers::pi * cfg.fc / cfg.fs * double(m);
    carrier[std::size_t(m)] = {std::cos(a), std::sin(a)};
  }

  const int L = g.half_len;
  for (long n = 0; n < out_len; ++n) {
    const long base = n * cfg.K;
    double acc_re = 0.0, acc_im = 0.0;
    const long i0 = std::max(-long(L), -base);
    const long i1 = std::min(long(L), len - 1 - base);
    for (long i = i0; i <= i1; ++i) {
      const long idx = base + i;
      const double gv = g.at(int(i)) * r[std::size_t(idx)];
      const cplx c = carrier[std::size_t(idx % period)];
      acc_re += gv * c.real();
      acc_im += gv * c.imag();
    }
    rb[std::size_t(n)] = {acc_re, acc_im};
  }
  return rb;
}

}  // namespace uwam
