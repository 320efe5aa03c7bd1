#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "uwam/fft.hpp"
#include "uwam/gold.hpp"
#include "uwam/interleaver.hpp"
#include "uwam/params.hpp"
#include "uwam/rrc.hpp"

namespace uwam {

// Per-user receiver assets derived once from the configuration.
struct UserAssets {
  int user = 0;
  std::vector<double> pilot;           // +-1, N chips
  std::vector<cplx> pilot_frame_freq;  // FFT_Nfft of the pilot at the frame offset
  std::vector<cplx> caf_pilot_conj;    // conj FFT_2Nfft of the pilot at [0, N)
  std::vector<int> interleaver;
};

struct ReceiverContext {
  ModemConfig cfg;
  RrcFilter rrc;
  std::map<int, UserAssets> users;

  ReceiverContext(const ModemConfig& c, const std::vector<int>& user_ids)
      : cfg(c), rrc(rrc_design(c.rolloff, c.rrc_half_len, c.sps)) {
    for (int u : user_ids) add_user(u);
  }

  void add_user(int u) {
    if (users.count(u)) return;
    UserAssets a;
    a.user = u;
    a.pilot = gold_pilot(u, cfg.N);
    std::vector<cplx> frame(std::size_t(cfg.Nfft), cplx{});
    for (int n = 0; n < cfg.N; ++n)
      frame[std::size_t(cfg.frame_offset() + n)] = {a.pilot[std::size_t(n)], 0.0};
    a.pilot_frame_freq = fft(std::move(frame));
    std::vector<cplx> padded(std::size_t(cfg.seg_len()), cplx{});
    for (int n = 0; n < cfg.N; ++n) padded[std::size_t(n)] = {a.pilot[std::size_t(n)], 0.0};
    a.caf_pilot_conj = fft(std::move(padded));
    for (auto& v : a.caf_pilot_conj) v = std::conj(v);
    a.interleaver = interleaver_permutation(cfg.coded_bits, cfg.master_seed, u);
    users.emplace(u, std::move(a));
  }

  const UserAssets& assets(int u) const {
    auto it = users.find(u);
    if (it == users.end()) throw std::out_of_range("unknown user id");
    return it->second;
  }
};

}  // namespace uwam
