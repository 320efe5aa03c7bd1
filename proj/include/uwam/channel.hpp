#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "uwam/fft.hpp"
#include "uwam/frame.hpp"
#include "uwam/params.hpp"
#include "uwam/prng.hpp"

namespace uwam {

struct ChannelTap {
  double delay_s = 0.0;
  cplx amp{1.0, 0.0};
};

// Static multipath taps plus a packet-wide time-scale factor a1 = 1 + v/c.
// snr_db is the per-user in-band SNR target used by the scenario mixer
// (infinity = no noise contribution requested for this user).
struct ChannelRealization {
  std::vector<ChannelTap> taps{{0.0, {1.0, 0.0}}};
  double a1 = 1.0;
  double snr_db = std::numeric_limits<double>::infinity();
};

inline constexpr double kMaxDelaySpreadS = 0.050;

// Multipath filtering at passband followed by the Doppler time rescale.
// Tap delays are quantized to the passband sample grid; a complex tap acts
// as a magnitude plus a carrier-phase rotation of the delayed copy. The
// rescale is linear interpolation of the real signal about the buffer
// midpoint. The envelope is kept only for a1 == 1 (it goes stale under
// resampling and nothing downstream needs it then).
inline PassbandPacket apply_channel(const PassbandPacket& in,
                                    const ChannelRealization& ch,
                                    const ModemConfig& cfg) {
  if (ch.a1 < 0.99 || ch.a1 > 1.01)
    throw std::invalid_argument("apply_channel: a1 out of range");
  long dmax = 0;
  for (const auto& t : ch.taps) {
    if (t.delay_s < 0.0 || t.delay_s > kMaxDelaySpreadS)
      throw std::invalid_argument("apply_channel: tap delay out of range");
    dmax = std::max(dmax, std::lround(t.delay_s * cfg.fs));
  }

  const double w = 2.0 * std::numbers::pi * cfg.fc / cfg.fs;
  PassbandPacket out;
  out.origin = in.origin;
  out.envelope.assign(in.envelope.size() + std::size_t(dmax), cplx{});
  for (const auto& t : ch.taps) {
    const long d = std::lround(t.delay_s * cfg.fs);
    const cplx h = t.amp * std::polar(1.0, -w * double(d));
    for (std::size_t j = 0; j < in.envelope.size(); ++j)
      out.envelope[j + std::size_t(d)] += h * in.envelope[j];
  }
  out.samples.resize(out.envelope.size());
  for (std::size_t j = 0; j < out.envelope.size(); ++j) {
    const double ph = w * double(long(j) - out.origin);
    out.samples[j] =
        out.envelope[j].real() * std::cos(ph) - out.envelope[j].imag() * std::sin(ph);
  }

  if (ch.a1 != 1.0) {
    const std::vector<double> x = out.samples;
    const double mid = 0.5 * double(x.size() - 1);
    for (std::size_t j = 0; j < out.samples.size(); ++j) {
      const double u = mid + (double(j) - mid) * ch.a1;
      const long k = long(std::floor(u));
      const double frac = u - double(k);
      double v = 0.0;
      if (k >= 0 && std::size_t(k) < x.size()) v += (1.0 - frac) * x[std::size_t(k)];
      if (k + 1 >= 0 && std::size_t(k + 1) < x.size()) v += frac * x[std::size_t(k + 1)];
      out.samples[j] = v;
    }
    out.envelope.clear();
  }
  return out;
}

// In-band SNR calibration: white Gaussian noise at fs scaled so the noise
// power inside the (1+alpha)Fd band around fc matches ref_power / SNR.
inline double noise_sigma_for_snr(double ref_power, double snr_db,
                                  const ModemConfig& cfg) {
  if (std::isinf(snr_db)) return 0.0;
  const double band = (1.0 + cfg.rolloff) * cfg.Fd;
  const double inband = ref_power * std::pow(10.0, -snr_db / 10.0);
  return std::sqrt(inband * (cfg.fs / 2.0) / band);
}

inline void add_noise_inplace(std::vector<double>& sig, double sigma,
                              std::uint64_t seed) {
  if (sigma <= 0.0) return;
  Xorshift64Star rng(seed);
  for (auto& v : sig) v += sigma * rng.gauss();
}

// Convenience form: reference power measured over [core_begin, core_end).
inline void add_noise_inplace(std::vector<double>& sig, double snr_db,
                              std::uint64_t seed, const ModemConfig& cfg,
                              std::size_t core_begin, std::size_t core_end) {
  if (std::isinf(snr_db)) return;
  double p = 0.0;
  for (std::size_t i = core_begin; i < core_end && i < sig.size(); ++i)
    p += sig[i] * sig[i];
  p /= double(std::max<std::size_t>(1, core_end - core_begin));
  add_noise_inplace(sig, noise_sigma_for_snr(p, snr_db, cfg), seed);
}

// Random short bursts, Poisson arrivals. Qualitative disturbance generator
// only; burst length is uniform in [0.5, 2] ms of shaped white noise.
inline int impulse_interference_inplace(std::vector<double>& sig, double rate_hz,
                                        double amplitude, std::uint64_t seed,
                                        const ModemConfig& cfg) {
  if (rate_hz <= 0.0 || sig.empty()) return 0;
  Xorshift64Star rng(seed);
  const double duration = double(sig.size()) / cfg.fs;
  int count = 0;
  double t = 0.0;
  for (;;) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    t += -std::log(u) / rate_hz;
    if (t >= duration) break;
    ++count;
    const double len_s = 0.0005 + 0.0015 * rng.uniform();
    const long start = std::lround(t * cfg.fs);
    const long len = std::lround(len_s * cfg.fs);
    for (long i = 0; i < len; ++i) {
      const std::size_t idx = std::size_t(start + i);
      if (idx >= sig.size()) break;
      const double env = std::sin(std::numbers::pi * double(i) / double(len));
      sig[idx] += amplitude * env * rng.gauss();
    }
  }
  return count;
}

}  // namespace uwam
