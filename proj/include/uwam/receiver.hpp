#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "uwam/context.hpp"
#include "uwam/detector.hpp"
#include "uwam/params.hpp"
#include "uwam/regen.hpp"
#include "uwam/turbo.hpp"

namespace uwam {

// One detection being worked through the turbo / IC rounds.
struct SegmentWork {
  DetectionRecord det;
  std::vector<cplx> base;     // extraction from the current baseband stream
  std::vector<cplx> segment;  // base minus packet-IC subtractions
  TurboResult turbo;
  bool has_result = false;
  bool dirty = true;       // turbo must (re)run
  bool duplicate = false;  // suppressed by same-packet clustering
  bool rb_subtracted = false;
  bool ic_applied = false;  // segment currently differs from base
  std::vector<cplx> regen;  // previous-round regeneration (Jacobi)
  bool regen_ok = false;
  int decoded_i2 = 0, decoded_i3 = 0;
};

struct PipelineResult {
  std::vector<PacketVerdict> verdicts;
  long detections_total = 0;  // every CAF fire across all sweeps
  std::vector<DiagRow> diag;
};

namespace detail {

// Same-packet clustering: detections of one user within half a packet are
// duplicates of a single transmission. The representative is the CRC-passing
// one with the highest SNR; ties go to the earliest timestamp.
inline void cluster_dedup(std::vector<SegmentWork>& works, const ModemConfig& cfg) {
  const long win = long(cfg.N);  // Fds samples = N/2 symbols
  std::vector<std::size_t> order(works.size());
  for (std::size_t i = 0; i < works.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (works[a].det.user != works[b].det.user) return works[a].det.user < works[b].det.user;
    return works[a].det.tau < works[b].det.tau;
  });
  // representative preference: already subtracted from the stream, then a
  // CRC pass, then the higher SNR, then the earlier timestamp.
  auto better = [&](const SegmentWork& a, const SegmentWork& b) {
    if (a.rb_subtracted != b.rb_subtracted) return a.rb_subtracted;
    const bool ac = a.has_result && a.turbo.verdict.crc_ok;
    const bool bc = b.has_result && b.turbo.verdict.crc_ok;
    if (ac != bc) return ac;
    const double as = a.has_result ? a.turbo.snr_mrc : -1.0;
    const double bs = b.has_result ? b.turbo.snr_mrc : -1.0;
    if (as != bs) return as > bs;
    return a.det.tau < b.det.tau;
  };
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           works[order[j + 1]].det.user == works[order[i]].det.user &&
           works[order[j + 1]].det.tau - works[order[j]].det.tau <= win)
      ++j;
    std::size_t best = order[i];
    for (std::size_t k = i + 1; k <= j; ++k)
      if (better(works[order[k]], works[best])) best = order[k];
    for (std::size_t k = i; k <= j; ++k) works[order[k]].duplicate = (order[k] != best);
    i = j + 1;
  }
}

inline bool matches_existing(const SegmentWork& w, const DetectionRecord& d,
                             const ModemConfig& cfg) {
  return w.det.user == d.user && std::abs(w.det.tau - d.tau) <= long(cfg.N);
}

}  // namespace detail

// Full receiver: detection sweep, per-segment turbo, packet IC over
// overlapping segments, signal IC against the baseband stream with
// re-detection. Deterministic for a fixed input and configuration.
inline PipelineResult run_pipeline(std::vector<cplx> rb, const ReceiverContext& ctx,
                                   const IcConfig& ic, bool collect_diag = false) {
  const ModemConfig& cfg = ctx.cfg;
  const Detector det(ctx, ic.detector);
  PipelineResult out;

  std::vector<SegmentWork> works;
  auto adopt = [&](DetectionRecord&& d) {
    SegmentWork w;
    w.base = d.segment;
    w.segment = w.base;
    w.det = std::move(d);
    w.det.segment.clear();
    works.push_back(std::move(w));
  };
  {
    auto dets = det.sweep(rb);
    out.detections_total += long(dets.size());
    for (auto& d : dets) adopt(std::move(d));
  }

  const long overlap_win = 2 * long(cfg.Nfft);  // Fds samples

  for (int i3 = 1; i3 <= ic.signal_rounds; ++i3) {
    for (int i2 = 1; i2 <= ic.packet_rounds; ++i2) {
      if (i2 > 1) {
        // Jacobi round: regenerate every eligible neighbour from the previous
        // turbo pass, then rebuild each segment from its base.
        for (auto& w : works) {
          w.regen_ok = false;
          if (w.duplicate || !w.has_result || w.rb_subtracted) continue;
          if (w.turbo.degenerate) continue;
          if (w.turbo.verdict.snr_mrc_db <= ic.packet_gate_snr_db) continue;
          if (ic.packet_gate_crc && !w.turbo.verdict.crc_ok) continue;
          RegenResult rg = regenerate(w.segment, ctx.assets(w.det.user), w.turbo.message,
                                      w.turbo.a1, cfg, ic.turbo.est,
                                      ic.regen_energy_factor, ic.regen_literal_ramp);
          if (rg.ok) {
            w.regen = std::move(rg.r_hat);
            w.regen_ok = true;
          }
        }
        for (std::size_t gi = 0; gi < works.size(); ++gi) {
          auto& g = works[gi];
          if (g.duplicate || g.rb_subtracted) continue;
          bool any = false;
          for (std::size_t ni = 0; ni < works.size(); ++ni) {
            if (ni == gi) continue;
            const auto& nb = works[ni];
            if (nb.duplicate || !nb.regen_ok) continue;
            const long delta = g.det.tau - nb.det.tau;
            if (std::abs(delta) >= overlap_win) continue;
            if (!any) {
              g.segment = g.base;
              any = true;
            }
            // absolute Fds index of g sample n is (g.tau - 2*offset) + n, so
            // it coincides with neighbour sample n + delta
            for (long n = 0; n < long(cfg.seg_len()); ++n) {
              const long m = n + delta;
              if (m < 0 || m >= long(cfg.seg_len())) continue;
              g.segment[std::size_t(n)] -= nb.regen[std::size_t(m)];
            }
          }
          if (any) {
            g.dirty = true;
            g.ic_applied = true;
          } else if (g.ic_applied) {
            g.segment = g.base;
            g.dirty = true;
            g.ic_applied = false;
          }
        }
      }

      for (auto& w : works) {
        if (w.duplicate || !w.dirty || w.rb_subtracted) continue;
        w.turbo = run_turbo(w.segment, ctx.assets(w.det.user), w.det.a1_init, cfg,
                            ic.turbo, collect_diag ? &out.diag : nullptr, w.det.tau);
        w.has_result = true;
        w.dirty = false;
        if (w.turbo.verdict.crc_ok && w.decoded_i2 == 0) {
          w.decoded_i2 = i2;
          w.decoded_i3 = i3;
        }
      }
      detail::cluster_dedup(works, cfg);
    }

    if (i3 == ic.signal_rounds) break;

    // Signal IC: subtract every newly decoded packet from the stream.
    std::vector<std::pair<long, long>> touched;  // [start, end) in rb
    int subtracted = 0;
    for (auto& w : works) {
      if (w.duplicate || w.rb_subtracted || !w.has_result) continue;
      if (ic.signal_gate_crc && !w.turbo.verdict.crc_ok) continue;
      if (w.turbo.degenerate) continue;
      RegenResult rg = regenerate(w.segment, ctx.assets(w.det.user), w.turbo.message,
                                  w.turbo.a1, cfg, ic.turbo.est,
                                  ic.regen_energy_factor, ic.regen_literal_ramp);
      if (!rg.ok) continue;
      const long start = w.det.tau - 2 * long(cfg.frame_offset());
      for (long n = 0; n < long(cfg.seg_len()); ++n) {
        const long idx = start + n;
        if (idx < 0 || idx >= long(rb.size())) continue;
        rb[std::size_t(idx)] -= rg.r_hat[std::size_t(n)];
      }
      touched.push_back({start, start + long(cfg.seg_len())});
      w.rb_subtracted = true;
      ++subtracted;
    }
    if (subtracted == 0) break;  // fixed point

    // Refresh unresolved segments whose window the subtraction touched.
    for (auto& w : works) {
      if (w.duplicate || w.rb_subtracted) continue;
      const long s0 = w.det.tau - 2 * long(cfg.frame_offset());
      const long s1 = s0 + long(cfg.seg_len());
      bool hit = false;
      for (const auto& [t0, t1] : touched)
        if (s0 < t1 && t0 < s1) {
          hit = true;
          break;
        }
      if (!hit) continue;
      w.base = det.extract_segment(rb, w.det.tau, &w.det.truncated);
      w.segment = w.base;
      w.ic_applied = false;
      w.dirty = true;
    }

    // Re-sweep the cleaned stream; unresolved matches adopt the new timing.
    auto dets = det.sweep(rb);
    out.detections_total += long(dets.size());
    for (auto& d : dets) {
      SegmentWork* match = nullptr;
      for (auto& w : works)
        if (detail::matches_existing(w, d, cfg)) {
          match = &w;
          break;
        }
      if (match) {
        if (match->rb_subtracted || match->duplicate) continue;
        if (match->has_result && match->turbo.verdict.crc_ok) continue;
        match->det = std::move(d);
        match->base = match->det.segment;
        match->det.segment.clear();
        match->segment = match->base;
        match->ic_applied = false;
        match->dirty = true;
      } else {
        adopt(std::move(d));
      }
    }
  }

  detail::cluster_dedup(works, cfg);
  for (auto& w : works) {
    if (w.duplicate || !w.has_result) continue;
    PacketVerdict v = w.turbo.verdict;
    v.user = w.det.user;
    v.tau = w.det.tau;
    v.decoded_at_i2 = w.decoded_i2;
    v.decoded_at_i3 = w.decoded_i3;
    out.verdicts.push_back(std::move(v));
  }
  std::sort(out.verdicts.begin(), out.verdicts.end(),
            [](const PacketVerdict& a, const PacketVerdict& b) {
              return a.tau < b.tau || (a.tau == b.tau && a.user < b.user);
            });
  return out;
}

}  // namespace uwam
