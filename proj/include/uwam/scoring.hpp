#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "uwam/demod.hpp"
#include "uwam/receiver.hpp"
#include "uwam/scenario.hpp"
#include "uwam/turbo.hpp"

namespace uwam {

struct ScoreResult {
  int total = 0;
  int received = 0;
  int lost = 0;
  int undetected_errors = 0;  // CRC pass with the wrong payload
  std::map<int, std::pair<int, int>> per_user;  // user -> (lost, total)

  double fer() const { return total ? double(lost) / double(total) : 0.0; }
};

// A transmitted packet counts as received iff a CRC-passing verdict matches
// it in user and time (within half a packet) with the exact payload.
inline ScoreResult score(const std::vector<PacketVerdict>& verdicts,
                         const std::vector<TruthRecord>& truth,
                         const ModemConfig& cfg) {
  ScoreResult r;
  r.total = int(truth.size());
  const double win_symbols = double(cfg.N) / 2.0;
  std::vector<bool> used(verdicts.size(), false);

  for (const auto& t : truth) {
    auto& pu = r.per_user[t.user];
    ++pu.second;
    const double t_sym = t.t_tx * cfg.Fd;
    int match = -1, crc_match = -1;
    for (std::size_t v = 0; v < verdicts.size(); ++v) {
      if (used[v] || !verdicts[v].crc_ok || verdicts[v].user != t.user) continue;
      const double v_sym = double(verdicts[v].tau) / 2.0;
      if (std::abs(v_sym - t_sym) > win_symbols) continue;
      if (verdicts[v].payload == t.payload) {
        match = int(v);
        break;
      }
      if (crc_match < 0) crc_match = int(v);
    }
    if (match >= 0) {
      used[std::size_t(match)] = true;
      ++r.received;
    } else {
      ++r.lost;
      ++pu.first;
      if (crc_match >= 0) {
        used[std::size_t(crc_match)] = true;
        ++r.undetected_errors;
      }
    }
  }
  return r;
}

struct GridCell {
  EqMode mode = EqMode::ic_rake;
  int i2 = 1, i3 = 1;
  ScoreResult result;
  long detections = 0;
};

struct RunReport {
  std::vector<GridCell> cells;  // sorted by (mode, i2, i3)
  double utilization = 0.0;
  int total_packets = 0;
  std::uint64_t seed = 0;
  double runtime_s = 0.0;  // shown in the text table, not in the CSV
};

inline int thread_count_from_env() {
  const char* env = std::getenv("UWAM_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// FER over the (I2, I3, mode) grid for one mixed scenario signal. Cells are
// independent; aggregation order is fixed regardless of the thread count.
inline RunReport run_grid(const Scenario& sc, const ModemConfig& cfg, int i2_max,
                          int i3_max, const std::vector<EqMode>& modes,
                          int threads = 1) {
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  ModemConfig run_cfg = cfg;
  run_cfg.master_seed = sc.master_seed;
  const MixOutput mix = mix_scenario(sc, run_cfg, rrc);
  const std::vector<cplx> rb = demodulate(mix.signal, rrc, run_cfg);

  std::vector<int> user_ids;
  for (const auto& u : sc.users) user_ids.push_back(u.user);
  const ReceiverContext ctx(run_cfg, user_ids);

  RunReport rep;
  rep.seed = sc.master_seed;
  rep.utilization = mix.utilization;
  rep.total_packets = int(mix.truth.size());
  for (EqMode m : modes)
    for (int i2 = 1; i2 <= i2_max; ++i2)
      for (int i3 = 1; i3 <= i3_max; ++i3) rep.cells.push_back({m, i2, i3, {}, 0});

  auto run_cell = [&](GridCell& cell) {
    IcConfig ic;
    ic.packet_rounds = cell.i2;
    ic.signal_rounds = cell.i3;
    ic.turbo.mode = cell.mode;
    PipelineResult pr = run_pipeline(rb, ctx, ic);
    cell.result = score(pr.verdicts, mix.truth, run_cfg);
    cell.detections = pr.detections_total;
  };

  if (threads <= 1) {
    for (auto& cell : rep.cells) run_cell(cell);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t]() {
        for (std::size_t i = std::size_t(t); i < rep.cells.size(); i += std::size_t(threads))
          run_cell(rep.cells[i]);
      });
    for (auto& th : pool) th.join();
  }
  return rep;
}

inline void write_report_csv(std::ostream& os, const RunReport& rep) {
  os << "mode,i2,i3,fer,lost,total,undetected_errors,detections,per_user\n";
  char buf[160];
  for (const auto& c : rep.cells) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6f,%d,%d,%d,%ld,", eq_mode_name(c.mode),
                  c.i2, c.i3, c.result.fer(), c.result.lost, c.result.total,
                  c.result.undetected_errors, c.detections);
    os << buf;
    bool first = true;
    for (const auto& [user, lt] : c.result.per_user) {
      std::snprintf(buf, sizeof buf, "%su%d:%d/%d", first ? "" : " ", user, lt.first,
                    lt.second);
      os << buf;
      first = false;
    }
    os << "\n";
  }
}

inline void write_report_csv(const std::string& path, const RunReport& rep) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write_report_csv(f, rep);
}

// Rows are I2, columns I3, one block per equalizer mode.
inline std::string format_report_table(const RunReport& rep) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "packets %d, utilization %.2f%%, seed %llu, runtime %.1f s\n",
                rep.total_packets, 100.0 * rep.utilization,
                (unsigned long long)rep.seed, rep.runtime_s);
  os << buf;
  std::map<EqMode, std::vector<const GridCell*>> by_mode;
  int i3_max = 1;
  for (const auto& c : rep.cells) {
    by_mode[c.mode].push_back(&c);
    i3_max = std::max(i3_max, c.i3);
  }
  if (!rep.cells.empty()) {
    const auto& last = rep.cells.back();
    os << "per-user lost/total at I2=" << last.i2 << ", I3=" << last.i3 << " ("
       << eq_mode_name(last.mode) << "):";
    for (const auto& [user, lt] : last.result.per_user)
      os << " u" << user << " " << lt.first << "/" << lt.second;
    os << "\n";
  }
  for (const auto& [mode, cells] : by_mode) {
    os << "\nFER, " << eq_mode_name(mode) << "\n        ";
    for (int i3 = 1; i3 <= i3_max; ++i3) {
      std::snprintf(buf, sizeof buf, "  I3=%-7d", i3);
      os << buf;
    }
    os << "\n";
    int last_i2 = 0;
    for (const auto* c : cells) {
      if (c->i2 != last_i2) {
        if (last_i2) os << "\n";
        std::snprintf(buf, sizeof buf, "  I2=%-3d", c->i2);
        os << buf;
        last_i2 = c->i2;
      }
      std::snprintf(buf, sizeof buf, "  %8.4f%%", 100.0 * c->result.fer());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

inline void write_verdicts_csv(const std::string& path,
                               const std::vector<PacketVerdict>& verdicts) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "user,tau_gamma,crc,snr_mrc_db,decoded_at_i2,decoded_at_i3\n";
  char buf[128];
  for (const auto& v : verdicts) {
    std::snprintf(buf, sizeof buf, "%d,%ld,%d,%.3f,%d,%d\n", v.user, v.tau,
                  v.crc_ok ? 1 : 0, v.snr_mrc_db, v.decoded_at_i2, v.decoded_at_i3);
    f << buf;
  }
}

inline void write_diag_csv(const std::string& path, const std::vector<DiagRow>& rows) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "user,tau_gamma,iteration,snr_mrc_db,support_b1,support_b2,a1\n";
  char buf[160];
  for (const auto& d : rows) {
    std::snprintf(buf, sizeof buf, "%d,%ld,%d,%.3f,%d,%d,%.8f\n", d.user, d.tau,
                  d.iteration, d.snr_mrc_db, d.support1, d.support2, d.a1);
    f << buf;
  }
}

}  // namespace uwam
