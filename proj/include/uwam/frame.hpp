#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "uwam/conv_code.hpp"
#include "uwam/crc16.hpp"
#include "uwam/fft.hpp"
#include "uwam/gold.hpp"
#include "uwam/interleaver.hpp"
#include "uwam/params.hpp"
#include "uwam/rrc.hpp"

namespace uwam {

inline std::vector<double> bpsk(const BitVec& bits) {
  std::vector<double> s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? -1.0 : 1.0;
  return s;
}

// Coding + user interleaving + BPSK for one message (payload with CRC
// already attached). Output length is cfg.coded_bits.
inline std::vector<double> encode_chain(const BitVec& message, int user,
                                        const ModemConfig& cfg) {
  if (int(message.size()) != cfg.payload_bits + cfg.crc_bits)
    throw std::invalid_argument("encode_chain: message must be payload+crc bits");
  const ConvCodec codec;
  BitVec coded = codec.encode(message, cfg.tail_bits);
  if (int(coded.size()) != cfg.coded_bits)
    throw std::logic_error("encode_chain: coded length mismatch");
  const auto perm = interleaver_permutation(cfg.coded_bits, cfg.master_seed, user);
  return bpsk(interleave(coded, perm));
}

// Pilot in the real part, coded data in the imaginary part: s(n) = p(n) + j d(n).
struct SuperimposedFrame {
  int user = 0;
  std::vector<double> pilot;      // +-1, length N
  std::vector<double> data_bpsk;  // +-1, length N

  std::vector<cplx> symbols() const {
    std::vector<cplx> s(pilot.size());
    for (std::size_t n = 0; n < s.size(); ++n) s[n] = {pilot[n], data_bpsk[n]};
    return s;
  }
};

inline SuperimposedFrame build_frame(const BitVec& payload, int user,
                                     const ModemConfig& cfg) {
  const BitVec message = crc16_attach(payload, cfg.payload_bits);
  SuperimposedFrame f;
  f.user = user;
  f.pilot = gold_pilot(user, cfg.N);
  f.data_bpsk = encode_chain(message, user, cfg);
  return f;
}

// Real passband packet. origin is the buffer index of the first symbol peak;
// timestamps refer to that instant. The complex envelope is kept alongside
// the real samples (same indexing) for use by the channel mixer.
struct PassbandPacket {
  std::vector<double> samples;
  std::vector<cplx> envelope;
  long origin = 0;
};

inline PassbandPacket modulate(const SuperimposedFrame& f, const RrcFilter& g,
                               const ModemConfig& cfg) {
  const int span = (int(f.pilot.size()) - 1) * cfg.sps;
  const int lo = -g.half_len;
  const int hi = span + g.half_len;
  PassbandPacket p;
  p.origin = -lo;
  p.envelope.assign(std::size_t(hi - lo + 1), cplx{});
  for (std::size_t n = 0; n < f.pilot.size(); ++n) {
    const cplx s{f.pilot[n], f.data_bpsk[n]};
    const int c = int(n) * cfg.sps;
    for (int i = -g.half_len; i <= g.half_len; ++i)
      p.envelope[std::size_t(c + i - lo)] += s * g.at(i);
  }
  p.samples.resize(p.envelope.size());
  const double w = 2.0 * std::numbers::pi * cfg.fc / cfg.fs;
  for (std::size_t j = 0; j < p.envelope.size(); ++j) {
    const double ph = w * double(long(j) - p.origin);
    p.samples[j] = p.envelope[j].real() * std::cos(ph) - p.envelope[j].imag() * std::sin(ph);
  }
  return p;
}

}  // namespace uwam
