#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "uwam/chanest.hpp"
#include "uwam/context.hpp"
#include "uwam/conv_code.hpp"
#include "uwam/doppler.hpp"
#include "uwam/equalizer.hpp"
#include "uwam/fft.hpp"
#include "uwam/params.hpp"

namespace uwam {

struct PacketVerdict {
  int user = 0;
  long tau = 0;  // Fds samples
  bool crc_ok = false;
  BitVec payload;       // payload_bits
  double snr_mrc_db = -std::numeric_limits<double>::infinity();
  int decoded_at_i2 = 0;  // first packet-IC round with a CRC pass (0 = never)
  int decoded_at_i3 = 0;  // first signal-IC round with a CRC pass (0 = never)
};

// Soft demapping of the combined symbols: data rides the imaginary part.
// Deinterleave, Viterbi, CRC.
struct DecodeResult {
  BitVec message;  // payload + crc
  bool crc_ok = false;
  double path_metric = 0.0;
};

inline DecodeResult demap_decode(const std::vector<cplx>& y, const UserAssets& ua,
                                 const ModemConfig& cfg) {
  std::vector<double> soft(std::size_t(cfg.coded_bits), 0.0);
  const std::size_t n = std::min(std::size_t(cfg.coded_bits), y.size());
  for (std::size_t i = 0; i < n; ++i) soft[i] = y[i].imag();
  soft = deinterleave(soft, ua.interleaver);
  const ConvCodec codec;
  auto [message, metric] = codec.decode(soft, cfg.tail_bits);
  DecodeResult r;
  r.message = std::move(message);
  r.crc_ok = crc16_check(r.message);
  r.path_metric = metric;
  return r;
}

struct DiagRow {
  int user = 0;
  long tau = 0;
  int iteration = 0;
  double snr_mrc_db = 0.0;
  int support1 = 0, support2 = 0;
  double a1 = 1.0;
};

struct TurboResult {
  PacketVerdict verdict;
  BitVec message;      // payload + crc as decoded
  double a1 = 1.0;     // combined Doppler estimate after the last iteration
  double snr_mrc = 0.0;
  std::vector<double> snr_trace;           // linear SNR_MRC per iteration
  std::vector<cplx> combined;              // final combined symbols, length N
  bool degenerate = false;                 // estimator collapsed, no decode
  int iterations = 0;
};

// Rebuild the transmit-frame spectrum for s(n) = p(n) + j d(n) placed at the
// frame offset.
inline std::vector<cplx> frame_spectrum(const std::vector<double>& pilot,
                                        const std::vector<double>& data,
                                        const ModemConfig& cfg) {
  std::vector<cplx> frame(std::size_t(cfg.Nfft), cplx{});
  const int off = cfg.frame_offset();
  for (int n = 0; n < cfg.N; ++n)
    frame[std::size_t(off + n)] = {pilot[std::size_t(n)],
                                   data.empty() ? 0.0 : data[std::size_t(n)]};
  return fft(std::move(frame));
}

// One detected segment through I1 turbo iterations: Doppler correction,
// two-branch split, sparse channel estimation, equalization, fine Doppler,
// MRC, decode, hard data feedback.
inline TurboResult run_turbo(const std::vector<cplx>& segment, const UserAssets& ua,
                             double a1_init, const ModemConfig& cfg,
                             const TurboConfig& tc,
                             std::vector<DiagRow>* diag = nullptr, long diag_tau = 0) {
  TurboResult res;
  res.a1 = a1_init;
  const int noff = cfg.frame_offset();
  std::vector<double> d_tilde;  // empty until the first decode
  std::vector<cplx> S = ua.pilot_frame_freq;
  std::vector<cplx> rho = gram_kernel(tc.est.gram_pilot_only ? ua.pilot_frame_freq : S);
  double snr_lin[2] = {std::pow(10.0, tc.snr_init_db / 10.0),
                       std::pow(10.0, tc.snr_init_db / 10.0)};
  BitVec prev_message;

  for (int it = 1; it <= tc.iters; ++it) {
    res.iterations = it;
    const std::vector<cplx> seg_c =
        res.a1 == 1.0 ? segment : doppler_correct(segment, res.a1, cfg);

    std::vector<cplx> ybr[2];
    double a1_br[2] = {res.a1, res.a1};
    int support_n[2] = {0, 0};
    bool degenerate = false;
    for (int b = 0; b < 2 && !degenerate; ++b) {
      std::vector<cplx> z(std::size_t(cfg.Nfft), cplx{});
      for (int k = 0; k < cfg.Nfft; ++k) z[std::size_t(k)] = seg_c[std::size_t(2 * k + b)];
      fft_inplace(z);
      const ChannelEstimate est = estimate_channel(z, S, rho, tc.est);
      support_n[b] = int(est.support.size());
      if (est.fallback || est.power() <= 0.0) {
        degenerate = true;
        break;
      }
      double h2 = 0.0;
      for (const auto& h : est.H) h2 += std::norm(h);
      h2 /= double(cfg.Nfft);
      const double eps_le = h2 / snr_lin[b];
      const std::vector<cplx> Y = equalize(z, est, S, tc.mode, eps_le);
      std::vector<cplx> yt = ifft(Y);
      ybr[b].assign(yt.begin() + noff, yt.begin() + noff + cfg.N);
      const double fstar = fine_doppler(ybr[b], ua.pilot, tc.fine_doppler_range_hz,
                                        cfg, tc.fine_doppler_halvings);
      remove_ramp_inplace(ybr[b], fstar, cfg);
      a1_br[b] = res.a1 + fstar / cfg.fc;
    }
    if (degenerate) {
      res.degenerate = true;
      break;
    }

    MrcResult mrc = mrc_combine(ybr[0], ybr[1], ua.pilot, a1_br[0], a1_br[1]);
    if (std::abs(mrc.a1 - res.a1) * cfg.fc >= tc.a1_update_min_hz) res.a1 = mrc.a1;
    DecodeResult dec = demap_decode(mrc.y, ua, cfg);
    const double snr_mrc = snr_estimate(mrc.y, ua.pilot);
    res.snr_trace.push_back(snr_mrc);
    res.snr_mrc = snr_mrc;
    res.combined = std::move(mrc.y);
    res.message = dec.message;
    res.verdict.crc_ok = dec.crc_ok;
    snr_lin[0] = std::max(1.0, mrc.snr1);
    snr_lin[1] = std::max(1.0, mrc.snr2);

    if (diag)
      diag->push_back({ua.user, diag_tau, it, 10.0 * std::log10(std::max(snr_mrc, 1e-12)),
                       support_n[0], support_n[1], res.a1});

    d_tilde = encode_chain(dec.message, ua.user, cfg);
    S = frame_spectrum(ua.pilot, d_tilde, cfg);
    rho = gram_kernel(tc.est.gram_pilot_only ? ua.pilot_frame_freq : S);

    if (tc.early_exit && dec.crc_ok && prev_message == dec.message && it >= 2) break;
    prev_message = dec.message;
  }

  res.verdict.user = ua.user;
  res.verdict.snr_mrc_db = 10.0 * std::log10(std::max(res.snr_mrc, 1e-12));
  if (!res.message.empty()) {
    res.verdict.payload.assign(res.message.begin(),
                               res.message.begin() + cfg.payload_bits);
  } else {
    res.verdict.crc_ok = false;
  }
  return res;
}

}  // namespace uwam
