#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uwam/crc16.hpp"  // BitVec

namespace uwam {

// Terminated convolutional codec. The default is the rate-1/3 code with
// constraint length 9 and generators (557, 663, 711) octal; D^0 sits at the
// LSB of each generator, i.e. bit k multiplies the input delayed by k.
class ConvCodec {
 public:
  explicit ConvCodec(std::vector<std::uint32_t> gens = {0557, 0663, 0711},
                     int constraint = 9)
      : gens_(std::move(gens)), constraint_(constraint) {
    if (constraint_ < 2 || constraint_ > 16)
      throw std::invalid_argument("conv: unsupported constraint length");
  }

  int rate_denominator() const { return int(gens_.size()); }
  int states() const { return 1 << (constraint_ - 1); }

  // Appends tail_bits zero inputs so the trellis ends in state 0.
  BitVec encode(const BitVec& bits, int tail_bits = 8) const {
    BitVec in = bits;
    in.insert(in.end(), std::size_t(tail_bits), 0);
    BitVec out;
    out.reserve(in.size() * gens_.size());
    const std::uint32_t mask = (1u << constraint_) - 1u;
    std::uint32_t reg = 0;
    for (auto b : in) {
      reg = ((reg << 1) | (b & 1u)) & mask;
      for (auto g : gens_) out.push_back(parity(reg & g));
    }
    return out;
  }

  // Soft-decision Viterbi on the terminated trellis. Soft inputs are
  // correlations: positive favours bit 0 (BPSK +1), negative bit 1 (-1).
  // Returns the undecoded inputs with the tail removed, plus the winning
  // path metric.
  std::pair<BitVec, double> decode(const std::vector<double>& soft,
                                   int tail_bits = 8) const {
    const int nout = rate_denominator();
    if (soft.size() % std::size_t(nout) != 0)
      throw std::invalid_argument("viterbi: input length not a rate multiple");
    const int steps = int(soft.size()) / nout;
    if (steps <= tail_bits)
      throw std::invalid_argument("viterbi: input shorter than the tail");

    const int ns = states();
    const std::uint32_t smask = std::uint32_t(ns - 1);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    // bpsk[(s << 1) | u][j]: expected soft sign of output j on that branch
    std::vector<std::array<double, 8>> bpsk(std::size_t(ns) << 1);
    for (std::uint32_t r9 = 0; r9 < (std::uint32_t(ns) << 1); ++r9)
      for (int j = 0; j < nout; ++j)
        bpsk[r9][std::size_t(j)] = parity(r9 & gens_[std::size_t(j)]) ? -1.0 : 1.0;

    std::vector<double> metric(std::size_t(ns), kNegInf), next(std::size_t(ns), 0.0);
    metric[0] = 0.0;
    // survivor[t * ns + s] = oldest bit of the predecessor of state s at step t
    std::vector<std::uint8_t> survivor(std::size_t(steps) * std::size_t(ns), 0);

    for (int t = 0; t < steps; ++t) {
      const double* in = soft.data() + std::size_t(t) * std::size_t(nout);
      const bool tail = t >= steps - tail_bits;
      for (int s2 = 0; s2 < ns; ++s2) {
        const std::uint32_t u = std::uint32_t(s2) & 1u;
        if (tail && u) {
          next[std::size_t(s2)] = kNegInf;
          continue;
        }
        const std::uint32_t base = std::uint32_t(s2) >> 1;
        double best = kNegInf;
        std::uint8_t best_old = 0;
        for (std::uint32_t old = 0; old < 2; ++old) {
          const std::uint32_t s1 = base | (old << (constraint_ - 2));
          if (metric[s1] == kNegInf) continue;
          const std::uint32_t r9 = ((s1 << 1) | u) & ((smask << 1) | 1u);
          double m = metric[s1];
          for (int j = 0; j < nout; ++j) m += bpsk[r9][std::size_t(j)] * in[j];
          if (m > best) {
            best = m;
            best_old = std::uint8_t(old);
          }
        }
        next[std::size_t(s2)] = best;
        survivor[std::size_t(t) * std::size_t(ns) + std::size_t(s2)] = best_old;
      }
      metric.swap(next);
    }

    BitVec decisions(std::size_t(steps), 0);
    std::uint32_t s = 0;  // terminated trellis ends in state 0
    const double path_metric = metric[0];
    for (int t = steps - 1; t >= 0; --t) {
      decisions[std::size_t(t)] = std::uint8_t(s & 1u);
      const std::uint8_t old = survivor[std::size_t(t) * std::size_t(ns) + s];
      s = (s >> 1) | (std::uint32_t(old) << (constraint_ - 2));
    }
    decisions.resize(std::size_t(steps - tail_bits));
    return {std::move(decisions), path_metric};
  }

 private:
  static std::uint8_t parity(std::uint32_t v) {
    v ^= v >> 16;
    v ^= v >> 8;
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    return std::uint8_t(v & 1u);
  }

  std::vector<std::uint32_t> gens_;
  int constraint_;
};

}  // namespace uwam
