#pragma once

// Full-chain fixtures shared by the receiver-side tests.

#include <cstdint>
#include <vector>

#include "uwam/channel.hpp"
#include "uwam/demod.hpp"
#include "uwam/detector.hpp"
#include "uwam/frame.hpp"
#include "uwam/prng.hpp"

namespace helpers {

using namespace uwam;

inline BitVec random_bits(int n, std::uint64_t seed) {
  Xorshift64Star rng(seed);
  BitVec b(std::size_t(n), 0);
  for (auto& v : b) v = std::uint8_t(rng.next() & 1u);
  return b;
}

struct ChainOut {
  BitVec payload;
  BitVec message;              // payload + crc
  std::vector<double> d_true;  // interleaved coded BPSK, length N
  long tau = 0;                // true packet start at Fds
  std::vector<cplx> rb;        // demodulated stream
  std::vector<cplx> segment;   // extraction at the true timestamp
  std::vector<cplx> segment_clean;  // same extraction before noise
};

// One packet through modulate -> channel -> noise -> demodulate, extracted
// at the exact transmit instant (detection bypassed). The noise-free
// extraction is kept alongside for residual measurements.
inline ChainOut run_chain(int user, const ChannelRealization& ch, double snr_db,
                          std::uint64_t seed, const ModemConfig& cfg,
                          const RrcFilter& rrc) {
  ChainOut out;
  out.payload = random_bits(cfg.payload_bits, seed);
  out.message = crc16_attach(out.payload, cfg.payload_bits);
  const SuperimposedFrame f = build_frame(out.payload, user, cfg);
  out.d_true = f.data_bpsk;
  const PassbandPacket rx = apply_channel(modulate(f, rrc, cfg), ch, cfg);

  const long pos = 16 * 1024;  // first symbol peak lands on the Fds grid
  std::vector<double> sig(std::size_t(pos) + rx.samples.size() + 40960, 0.0);
  for (std::size_t j = 0; j < rx.samples.size(); ++j)
    sig[std::size_t(pos - rx.origin + long(j))] += rx.samples[j];
  const std::vector<double> clean = sig;
  add_noise_inplace(sig, snr_db, mix_seed(seed, 0xADDu), cfg, std::size_t(pos),
                    std::size_t(pos + long(cfg.N - 1) * cfg.sps));

  out.rb = demodulate(sig, rrc, cfg);
  out.tau = pos / cfg.K;
  const std::vector<cplx> rb_clean =
      sig == clean ? out.rb : demodulate(clean, rrc, cfg);
  const long start = out.tau - 2 * long(cfg.frame_offset());
  out.segment.assign(std::size_t(cfg.seg_len()), cplx{});
  out.segment_clean.assign(std::size_t(cfg.seg_len()), cplx{});
  for (long n = 0; n < long(cfg.seg_len()); ++n) {
    const long idx = start + n;
    if (idx >= 0 && idx < long(out.rb.size())) {
      out.segment[std::size_t(n)] = out.rb[std::size_t(idx)];
      out.segment_clean[std::size_t(n)] = rb_clean[std::size_t(idx)];
    }
  }
  return out;
}

struct PlacedPacket {
  PlacedPacket() = default;
  PlacedPacket(int user_, double amp_, double t_s_, std::uint64_t seed_,
               ChannelRealization ch_ = {})
      : user(user_), amp(amp_), t_s(t_s_), seed(seed_), ch(std::move(ch_)) {}

  int user = 1;
  double amp = 1.0;
  double t_s = 0.1;  // first symbol peak instant
  std::uint64_t seed = 1;
  ChannelRealization ch{};
  BitVec payload;  // filled by place_packets
  long tau = 0;    // Fds samples, filled by place_packets
};

// Hand-placed packets plus one shared noise process calibrated against the
// first packet's received core power.
inline std::vector<cplx> place_packets(std::vector<PlacedPacket>& specs,
                                       double duration_s, double noise_snr_db,
                                       const ModemConfig& cfg, const RrcFilter& rrc,
                                       std::uint64_t noise_seed = 0xBEEF) {
  std::vector<double> sig(std::size_t(duration_s * cfg.fs), 0.0);
  double ref_power = -1.0;
  for (auto& p : specs) {
    p.payload = random_bits(cfg.payload_bits, p.seed);
    ChannelRealization ch = p.ch;
    for (auto& t : ch.taps) t.amp *= p.amp;
    const PassbandPacket rx = apply_channel(modulate(build_frame(p.payload, p.user, cfg), rrc, cfg), ch, cfg);
    const long pos = std::lround(p.t_s * cfg.fs / 16.0) * 16;  // Fds grid
    p.tau = pos / cfg.K;
    for (std::size_t j = 0; j < rx.samples.size(); ++j) {
      const long idx = pos - rx.origin + long(j);
      if (idx >= 0 && idx < long(sig.size())) sig[std::size_t(idx)] += rx.samples[j];
    }
    if (ref_power < 0.0) {
      double acc = 0.0;
      const long core = long(cfg.N - 1) * cfg.sps;
      for (long i = 0; i <= core; ++i) {
        const double v = rx.samples[std::size_t(rx.origin + i)];
        acc += v * v;
      }
      ref_power = acc / double(core + 1);
    }
  }
  add_noise_inplace(sig, noise_sigma_for_snr(ref_power, noise_snr_db, cfg), noise_seed);
  return demodulate(sig, rrc, cfg);
}

}  // namespace helpers
