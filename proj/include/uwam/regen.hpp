#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "uwam/chanest.hpp"
#include "uwam/context.hpp"
#include "uwam/fft.hpp"
#include "uwam/params.hpp"
#include "uwam/turbo.hpp"

namespace uwam {

struct RegenResult {
  std::vector<cplx> r_hat;  // seg_len samples at Fds
  bool ok = false;
};

// Rebuild the channel output for a decoded packet: rerun the transmit bit
// chain on the decoded message, apply the Doppler rotation as a frequency
// shift, then re-estimate the channel against the original (uncorrected)
// segment with that reference so the regenerated copy inherits the right
// bulk phase. Odd and even samples are produced per branch and interleaved
// back to the Fds grid.
inline RegenResult regenerate(const std::vector<cplx>& segment, const UserAssets& ua,
                              const BitVec& message, double a1_hat,
                              const ModemConfig& cfg, const EstimatorConfig& est_cfg,
                              double energy_factor = 1.5, bool literal_ramp = false) {
  RegenResult out;
  const std::vector<double> d_hat = encode_chain(message, ua.user, cfg);

  std::vector<cplx> s_d(std::size_t(cfg.Nfft), cplx{});
  const int off = cfg.frame_offset();
  const double shift = literal_ramp ? a1_hat : (a1_hat - 1.0);
  const double w = 2.0 * std::numbers::pi * shift * cfg.fc / cfg.Fd;
  for (int n = 0; n < cfg.N; ++n) {
    const cplx s{ua.pilot[std::size_t(n)], d_hat[std::size_t(n)]};
    s_d[std::size_t(off + n)] = s * std::polar(1.0, w * double(off + n));
  }
  const std::vector<cplx> S_D = fft(std::move(s_d));
  const std::vector<cplx> rho = gram_kernel(S_D);

  out.r_hat.assign(std::size_t(cfg.seg_len()), cplx{});
  for (int b = 0; b < 2; ++b) {
    std::vector<cplx> z(std::size_t(cfg.Nfft), cplx{});
    for (int k = 0; k < cfg.Nfft; ++k) z[std::size_t(k)] = segment[std::size_t(2 * k + b)];
    fft_inplace(z);
    const ChannelEstimate est = estimate_channel(z, S_D, rho, est_cfg);
    if (est.fallback || est.power() <= 0.0) return out;
    std::vector<cplx> R(std::size_t(cfg.Nfft), cplx{});
    for (int k = 0; k < cfg.Nfft; ++k)
      R[std::size_t(k)] = est.H[std::size_t(k)] * S_D[std::size_t(k)];
    const std::vector<cplx> rb = ifft(std::move(R));
    for (int k = 0; k < cfg.Nfft; ++k) out.r_hat[std::size_t(2 * k + b)] = rb[std::size_t(k)];
  }

  double e_seg = 0.0, e_hat = 0.0;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    e_seg += std::norm(segment[i]);
    e_hat += std::norm(out.r_hat[i]);
  }
  if (e_hat > energy_factor * e_seg) return out;  // estimator blow-up guard
  out.ok = true;
  return out;
}

}  // namespace uwam
