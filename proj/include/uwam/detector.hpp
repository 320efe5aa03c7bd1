#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "uwam/context.hpp"
#include "uwam/fft.hpp"
#include "uwam/params.hpp"

namespace uwam {

// One fired detection: timestamps are baseband sample indices at Fds.
// The extracted segment is seg_len() samples starting 2*frame_offset()
// samples before tau so the packet sits in the centre of the frame.
struct DetectionRecord {
  int user = 0;
  long q = 0;
  long tau = 0;          // packet start estimate, Fds samples
  double a1_init = 1.0;  // 1 + F_max / fc
  double peak = 0.0;     // |A|^2 at the grid argmax
  std::vector<cplx> segment;
  bool truncated = false;
};

// Cross-ambiguity packet detection over a delay/Doppler grid, evaluated on
// half-packet windows of the baseband signal.
class Detector {
 public:
  Detector(const ReceiverContext& ctx, const DetectorConfig& dc)
      : ctx_(ctx), dc_(dc) {
    const auto& cfg = ctx.cfg;
    const int bins = 2 * dc_.Nd + 1;
    ramps_.resize(std::size_t(bins));
    for (int f = -dc_.Nd; f <= dc_.Nd; ++f) {
      auto& ramp = ramps_[std::size_t(f + dc_.Nd)];
      ramp.resize(std::size_t(cfg.N));
      const double w = 2.0 * std::numbers::pi * double(f) * dc_.delta_f / cfg.Fd;
      for (int n = 0; n < cfg.N; ++n) ramp[std::size_t(n)] = std::polar(1.0, w * double(n));
    }
  }

  struct WindowStats {
    double peak = 0.0;             // I(u, q)
    double total = 0.0;            // sum of |A|^2 over the whole grid
    std::vector<double> col_sum;   // per Doppler bin, tau in [0, N)
    int tau_max = 0;               // symbols
    int f_max = 0;                 // signed bin index
  };

  // A(u, q, tau, F) for one user and window; also used for the debug dump.
  // Rows are Doppler bins (f = -Nd..Nd), columns tau = 0..N-1.
  std::vector<std::vector<cplx>> caf_surface(const std::vector<cplx>& rb, int user,
                                             long q) const {
    std::vector<std::vector<cplx>> surface;
    const auto wffts = window_ffts(rb, q);
    const auto& ua = ctx_.assets(user);
    for (const auto& wf : wffts) {
      std::vector<cplx> prod(wf.size());
      for (std::size_t k = 0; k < wf.size(); ++k) prod[k] = wf[k] * ua.caf_pilot_conj[k];
      auto corr = ifft(std::move(prod));
      corr.resize(std::size_t(ctx_.cfg.N));
      surface.push_back(std::move(corr));
    }
    return surface;
  }

  WindowStats window_stats(const std::vector<std::vector<cplx>>& wffts, int user) const {
    const auto& ua = ctx_.assets(user);
    const int bins = 2 * dc_.Nd + 1;
    WindowStats st;
    st.col_sum.assign(std::size_t(bins), 0.0);
    for (int fi = 0; fi < bins; ++fi) {
      const auto& wf = wffts[std::size_t(fi)];
      std::vector<cplx> prod(wf.size());
      for (std::size_t k = 0; k < wf.size(); ++k) prod[k] = wf[k] * ua.caf_pilot_conj[k];
      const auto corr = ifft(std::move(prod));
      for (int tau = 0; tau < ctx_.cfg.N; ++tau) {
        const double m2 = std::norm(corr[std::size_t(tau)]);
        st.col_sum[std::size_t(fi)] += m2;
        if (better_peak(m2, tau, fi - dc_.Nd, st)) {
          st.peak = m2;
          st.tau_max = tau;
          st.f_max = fi - dc_.Nd;
        }
      }
    }
    for (double c : st.col_sum) st.total += c;
    return st;
  }

  // Forward FFTs of conj(window) * Doppler ramp, one per bin, zero-padded to
  // seg_len. Window q covers symbols [q*Q, q*Q + N).
  std::vector<std::vector<cplx>> window_ffts(const std::vector<cplx>& rb, long q) const {
    const auto& cfg = ctx_.cfg;
    const int bins = 2 * dc_.Nd + 1;
    const long base = 2 * q * dc_.Q;
    std::vector<std::vector<cplx>> out(std::size_t(bins), std::vector<cplx>{});
    for (int fi = 0; fi < bins; ++fi) {
      std::vector<cplx> w(std::size_t(cfg.seg_len()), cplx{});
      const auto& ramp = ramps_[std::size_t(fi)];
      for (int k = 0; k < cfg.N; ++k) {
        const long idx = base + 2 * k;
        if (idx < 0 || idx >= long(rb.size())) continue;
        w[std::size_t(k)] = std::conj(rb[std::size_t(idx)]) * ramp[std::size_t(k)];
      }
      fft_inplace(w);
      out[std::size_t(fi)] = std::move(w);
    }
    return out;
  }

  long window_count(const std::vector<cplx>& rb) const {
    const long need = 2 * long(ctx_.cfg.N - 1) + 1;
    const long step = 2 * dc_.Q;
    if (long(rb.size()) < need) return 0;
    return (long(rb.size()) - need) / step + 1;
  }

  // Full sweep: stats for every (user, window), then the occupancy and
  // clear-peak tests. Fires may overlap; duplicates are resolved downstream.
  std::vector<DetectionRecord> sweep(const std::vector<cplx>& rb) const {
    const auto& cfg = ctx_.cfg;
    const long nq = window_count(rb);
    std::vector<int> user_ids;
    for (const auto& [u, _] : ctx_.users) user_ids.push_back(u);
    std::vector<std::vector<WindowStats>> stats(
        user_ids.size(), std::vector<WindowStats>(std::size_t(nq)));
    for (long q = 0; q < nq; ++q) {
      const auto wffts = window_ffts(rb, q);
      for (std::size_t ui = 0; ui < user_ids.size(); ++ui)
        stats[ui][std::size_t(q)] = window_stats(wffts, user_ids[ui]);
    }
    std::vector<DetectionRecord> dets;
    const double test2_scale = dc_.nu / (2.0 * double(dc_.Nd) * double(cfg.Nfft));
    for (std::size_t ui = 0; ui < user_ids.size(); ++ui) {
      for (long q = 0; q < nq; ++q) {
        const auto& st = stats[ui][std::size_t(q)];
        if (st.peak <= 0.0) continue;
        const double left =
            q - dc_.neighbor_gap >= 0 ? stats[ui][std::size_t(q - dc_.neighbor_gap)].peak : 0.0;
        const double right =
            q + dc_.neighbor_gap < nq ? stats[ui][std::size_t(q + dc_.neighbor_gap)].peak : 0.0;
        if (!(st.peak > left + right)) continue;
        const double rest = st.total - st.col_sum[std::size_t(st.f_max + dc_.Nd)];
        if (!(st.peak > test2_scale * rest)) continue;
        DetectionRecord d;
        d.user = user_ids[ui];
        d.q = q;
        d.tau = 2 * q * dc_.Q + 2 * long(st.tau_max);
        d.a1_init = 1.0 + double(st.f_max) * dc_.delta_f / cfg.fc;
        d.peak = st.peak;
        d.segment = extract_segment(rb, d.tau, &d.truncated);
        dets.push_back(std::move(d));
      }
    }
    std::sort(dets.begin(), dets.end(), [](const DetectionRecord& a, const DetectionRecord& b) {
      return a.tau < b.tau || (a.tau == b.tau && a.user < b.user);
    });
    return dets;
  }

  std::vector<cplx> extract_segment(const std::vector<cplx>& rb, long tau,
                                    bool* truncated = nullptr) const {
    const auto& cfg = ctx_.cfg;
    const long start = tau - 2 * long(cfg.frame_offset());
    std::vector<cplx> seg(std::size_t(cfg.seg_len()), cplx{});
    bool trunc = false;
    for (long n = 0; n < long(cfg.seg_len()); ++n) {
      const long idx = start + n;
      if (idx < 0 || idx >= long(rb.size())) {
        trunc = true;
        continue;
      }
      seg[std::size_t(n)] = rb[std::size_t(idx)];
    }
    if (truncated) *truncated = trunc;
    return seg;
  }

 private:
  // Strictly-greater peak with the earliest-arrival tie break: lowest tau,
  // then lowest |f|, then lowest f.
  static bool better_peak(double m2, int tau, int f, const WindowStats& st) {
    if (m2 > st.peak) return true;
    if (m2 < st.peak) return false;
    if (tau != st.tau_max) return tau < st.tau_max;
    if (std::abs(f) != std::abs(st.f_max)) return std::abs(f) < std::abs(st.f_max);
    return f < st.f_max;
  }

  const ReceiverContext& ctx_;
  DetectorConfig dc_;
  std::vector<std::vector<cplx>> ramps_;
};

}  // namespace uwam
