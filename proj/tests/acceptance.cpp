// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Heavier, end-to-end runs; the unit suites cover the
// per-module contracts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "uwam/uwam.hpp"

using namespace uwam;
using helpers::PlacedPacket;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------- criterion 1
void criterion_loopback() {
  const double t0 = now_s();
  ModemConfig cfg;
  Scenario sc;
  sc.duration_s = 60.0;
  sc.master_seed = 11;
  sc.burst_period_s = 1.2;
  sc.clock_skew_max = 0.0;
  UserSchedule u;
  u.user = 1;
  u.start_s = 0.05;
  u.packets_per_burst = 4;
  u.packet_period_s = 0.3;
  sc.users = {u};

  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  cfg.master_seed = sc.master_seed;
  const MixOutput mix = mix_scenario(sc, cfg, rrc);
  const ReceiverContext ctx(cfg, {1});
  const PipelineResult pr = run_pipeline(demodulate(mix.signal, rrc, cfg), ctx, IcConfig{});
  const ScoreResult sr = score(pr.verdicts, mix.truth, cfg);
  const double secs = now_s() - t0;
  const bool pass = sr.total == 200 && sr.lost == 0 && secs < 120.0;
  report(1, "loopback zero-FER (200 packets, single tap, no noise)", pass,
         fmt("FER %.4f%% (%d/%d lost), %.1f s", 100.0 * sr.fer(), sr.lost, sr.total, secs));
}

// ---------------------------------------------------------------- criterion 2
void criterion_estimator_oracle() {
  ModemConfig cfg;
  EstimatorConfig ec;
  const auto pilot = gold_pilot(1, cfg.N);
  const auto data = encode_chain(
      crc16_attach(helpers::random_bits(cfg.payload_bits, 2), cfg.payload_bits), 1, cfg);
  const auto S = frame_spectrum(pilot, data, cfg);
  const auto rho = gram_kernel(S);
  std::vector<cplx> frame_time(std::size_t(cfg.Nfft), cplx{});
  for (int n = 0; n < cfg.N; ++n)
    frame_time[std::size_t(cfg.frame_offset() + n)] = {pilot[std::size_t(n)],
                                                       data[std::size_t(n)]};

  Xorshift64Star rng(77);
  int recovered = 0;
  std::vector<double> nmses;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    std::set<int> delays;
    while (delays.size() < 5) {
      const int d = int(rng.next() % 281) - 140;
      bool ok = true;
      for (int e : delays)
        if (std::abs(d - e) < 3) ok = false;
      if (ok) delays.insert(d);
    }
    std::vector<std::pair<int, cplx>> taps;
    double pwr = 0.0;
    for (int d : delays) {
      const cplx a =
          std::polar(0.35 + 0.65 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
      taps.push_back({((d % cfg.Nfft) + cfg.Nfft) % cfg.Nfft, a});
      pwr += std::norm(a);
    }
    // circular branch synthesis at 20 dB
    std::vector<cplx> z(std::size_t(cfg.Nfft), cplx{});
    for (const auto& [d, a] : taps)
      for (int i = 0; i < cfg.Nfft; ++i)
        z[std::size_t((i + d) % cfg.Nfft)] += a * frame_time[std::size_t(i)];
    const double sig_pwr = pwr * 2.0 * double(cfg.N) / double(cfg.Nfft);
    const double sigma = std::sqrt(sig_pwr / 100.0);
    for (auto& v : z) v += sigma * cplx{rng.gauss(), rng.gauss()} / std::sqrt(2.0);

    const ChannelEstimate est = estimate_channel(fft(z), S, rho, ec);
    bool all = true;
    double err = 0.0;
    for (const auto& [d, a] : taps) {
      cplx got{};
      bool found = false;
      for (std::size_t i = 0; i < est.support.size(); ++i)
        if (est.support[i] == d) {
          got = est.amps[i];
          found = true;
        }
      all &= found;
      err += std::norm(got - a);
    }
    for (std::size_t i = 0; i < est.support.size(); ++i) {
      bool truth = false;
      for (const auto& [d, a] : taps) truth |= (est.support[i] == d);
      if (!truth) err += std::norm(est.amps[i]);
    }
    if (all) ++recovered;
    nmses.push_back(10.0 * std::log10(err / pwr));
  }
  std::nth_element(nmses.begin(), nmses.begin() + trials / 2, nmses.end());
  const double nmse_med = nmses[trials / 2];

  // DCD against direct elimination on 1000 random PD systems
  int dcd_ok = 0;
  const int dcd_trials = 1000;
  for (int t = 0; t < dcd_trials; ++t) {
    Xorshift64Star r2(5000 + std::uint64_t(t));
    const int m = 2 + int(r2.next() % 29);  // up to 30
    std::vector<std::vector<cplx>> g(std::size_t(m), std::vector<cplx>(std::size_t(m), cplx{}));
    std::vector<std::vector<cplx>> rmat(std::size_t(m), std::vector<cplx>(std::size_t(m), cplx{}));
    for (auto& row : rmat)
      for (auto& v : row) v = {r2.gauss(), r2.gauss()};
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        cplx acc = (i == j) ? cplx{double(m), 0.0} : cplx{};
        for (int k = 0; k < m; ++k)
          acc += std::conj(rmat[std::size_t(k)][std::size_t(i)]) * rmat[std::size_t(k)][std::size_t(j)];
        g[std::size_t(i)][std::size_t(j)] = acc;
      }
    std::vector<cplx> xi(std::size_t(m), cplx{});
    for (auto& v : xi) v = {r2.gauss(), r2.gauss()};
    const auto direct = oracle::solve_direct(g, xi);
    const auto dcd = dcd_solve(g, xi);
    double e = 0.0, p = 0.0;
    for (int i = 0; i < m; ++i) {
      e += std::norm(dcd.solution[std::size_t(i)] - direct[std::size_t(i)]);
      p += std::norm(direct[std::size_t(i)]);
    }
    if (std::sqrt(e / p) < 1e-3) ++dcd_ok;
  }

  const bool pass = recovered >= 95 && nmse_med <= -20.0 && dcd_ok == dcd_trials;
  report(2, "channel estimator oracle (support, NMSE, DCD vs direct)", pass,
         fmt("support %d/100, NMSE median %.1f dB, DCD %d/%d within 1e-3", recovered,
             nmse_med, dcd_ok, dcd_trials));
}

// ---------------------------------------------------------------- criterion 3
ChannelRealization fixed_ten_tap_channel() {
  // fixed, deliberately dispersive profile
  ChannelRealization ch;
  ch.taps = {{0.0e-3, std::polar(1.00, 0.0)},   {0.55e-3, std::polar(0.78, 2.1)},
             {1.30e-3, std::polar(0.66, -1.2)}, {2.05e-3, std::polar(0.55, 0.7)},
             {2.90e-3, std::polar(0.48, -2.8)}, {3.85e-3, std::polar(0.40, 1.6)},
             {4.95e-3, std::polar(0.33, -0.4)}, {6.10e-3, std::polar(0.27, 2.9)},
             {7.40e-3, std::polar(0.22, -1.9)}, {8.90e-3, std::polar(0.18, 0.9)}};
  return ch;
}

struct CollisionSetup {
  std::vector<cplx> rb;
  std::vector<PlacedPacket> pkts;  // even index strong (user 1), odd weak (user 2)
  int pairs = 0;
};

// jitter_s randomizes each pair's placement against the detector's window
// grid: zero keeps one collision geometry (payload and noise vary, the start
// walks the symbol grid), the full window span exercises every phase
// including half-symbol offsets, where the symbol-rate correlation loses
// rc(T/2) of its peak.
CollisionSetup build_collisions(const ModemConfig& cfg, const RrcFilter& rrc, int pairs,
                                double gap_db, double overlap, double snr_ref_db,
                                std::uint64_t seed, double jitter_s) {
  CollisionSetup cs;
  cs.pairs = pairs;
  const double weak_amp = std::pow(10.0, -gap_db / 20.0);
  ChannelRealization ch_strong, ch_weak;
  ch_strong.taps = {{0.0, {1.0, 0.0}},
                    {1.1e-3, std::polar(0.45, 1.9)},
                    {3.2e-3, std::polar(0.3, -0.8)}};
  // the weak channel keeps a bounded spectral null so no equalizer mode is
  // realization-limited; mode separation is measured by the BER comparison
  ch_weak.taps = {{0.0, {1.0, 0.0}}, {0.9e-3, std::polar(0.38, -2.2)}};
  const double lag = (1.0 - overlap) * 0.1;  // packet core is 100 ms
  Xorshift64Star jitter(mix_seed(seed, 0x717ULL));
  for (int k = 0; k < pairs; ++k) {
    const double walk = double(k % 10) / 6000.0;  // whole symbols
    const double t0 = 0.15 + 0.7 * double(k) +
                      (jitter_s > 0.0 ? jitter_s * jitter.uniform() : walk);
    PlacedPacket strong{1, 1.0, t0, mix_seed(seed, 2 * std::uint64_t(k)), ch_strong};
    PlacedPacket weak{2, weak_amp, t0 + lag, mix_seed(seed, 2 * std::uint64_t(k) + 1),
                      ch_weak};
    cs.pkts.push_back(strong);
    cs.pkts.push_back(weak);
  }
  cs.rb = helpers::place_packets(cs.pkts, 0.7 * pairs + 0.4, snr_ref_db, cfg, rrc,
                                 mix_seed(seed, 0xF00Du));
  return cs;
}

// weak-packet FER in a collision set for one receiver configuration
double weak_fer(const CollisionSetup& cs, const ReceiverContext& ctx, int i2, int i3,
                EqMode mode) {
  IcConfig ic;
  ic.packet_rounds = i2;
  ic.signal_rounds = i3;
  ic.turbo.mode = mode;
  const PipelineResult pr = run_pipeline(cs.rb, ctx, ic);
  int lost = 0;
  for (const auto& p : cs.pkts) {
    if (p.user != 2) continue;
    bool got = false;
    for (const auto& v : pr.verdicts)
      if (v.user == 2 && v.crc_ok && std::abs(v.tau - p.tau) <= long(ctx.cfg.N) &&
          v.payload == p.payload)
        got = true;
    if (!got) ++lost;
  }
  return double(lost) / double(cs.pairs);
}

void criterion_equalizer_ordering(const CollisionSetup& collisions,
                                  const ReceiverContext& col_ctx) {
  const ModemConfig cfg;
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const ReceiverContext ctx(cfg, {1});
  const ChannelRealization ch = fixed_ten_tap_channel();

  long errors[3] = {0, 0, 0};  // rake, linear, ic_rake
  long bits = 0;
  const EqMode modes[3] = {EqMode::rake, EqMode::linear, EqMode::ic_rake};
  for (int t = 0; t < 200; ++t) {
    const auto chain = helpers::run_chain(1, ch, 15.0, 3000 + std::uint64_t(t), cfg, rrc);
    for (int m = 0; m < 3; ++m) {
      TurboConfig tc;
      tc.mode = modes[m];
      tc.iters = 3;
      tc.early_exit = false;
      const TurboResult res = run_turbo(chain.segment, ctx.assets(1), 1.0, cfg, tc);
      for (int n = 0; n < cfg.N; ++n)
        if (res.combined[std::size_t(n)].imag() * chain.d_true[std::size_t(n)] <= 0.0)
          ++errors[m];
    }
    bits += cfg.N;
  }
  const double ber_rake = double(errors[0]) / double(bits);
  const double ber_lin = double(errors[1]) / double(bits);
  const double ber_icr = double(errors[2]) / double(bits);
  const bool ber_ok = ber_icr < 0.8 * ber_lin && ber_lin < 0.8 * ber_rake;

  const double fer_icr = weak_fer(collisions, col_ctx, 2, 1, EqMode::ic_rake);
  const double fer_lin = weak_fer(collisions, col_ctx, 2, 1, EqMode::linear);
  const double fer_rake = weak_fer(collisions, col_ctx, 2, 1, EqMode::rake);
  const bool fer_ok = fer_icr <= fer_lin && fer_lin <= fer_rake;

  report(3, "equalizer ordering (uncoded BER and collision FER)", ber_ok && fer_ok,
         fmt("BER rake %.4f > linear %.4f > ic-rake %.4f (gaps >= 20%%: %s); "
             "weak FER ic-rake %.2f <= linear %.2f <= rake %.2f",
             ber_rake, ber_lin, ber_icr, ber_ok ? "yes" : "no", fer_icr, fer_lin,
             fer_rake));
}

// ---------------------------------------------------------------- criterion 4
void criterion_detection() {
  const ModemConfig cfg;
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const ReceiverContext ctx(cfg, {1});
  const Detector det(ctx, DetectorConfig{});

  int detected = 0, tau_ok = 0, dop_ok = 0;
  const int trials = 200;
  Xorshift64Star rng(99);
  for (int t = 0; t < trials; ++t) {
    ChannelRealization ch;
    // on-grid Doppler offsets within the detector range
    const int bin = int(rng.next() % 5) - 2;
    ch.a1 = 1.0 + double(bin) * 10.0 / cfg.fc;
    const auto chain = helpers::run_chain(1, ch, 10.0, 4000 + std::uint64_t(t), cfg, rrc);
    const auto dets = det.sweep(chain.rb);
    // rate the principal fire; weaker duplicate fires are disambiguated by
    // the pipeline downstream
    const DetectionRecord* best = nullptr;
    for (const auto& d : dets)
      if (std::abs(d.tau - chain.tau) <= long(cfg.N) && (!best || d.peak > best->peak))
        best = &d;
    if (!best) continue;
    ++detected;
    if (std::abs(best->tau - chain.tau) <= 2) ++tau_ok;  // one symbol at Fds
    if (std::abs((best->a1_init - ch.a1) * cfg.fc) <= 5.0) ++dop_ok;
  }

  // false-alarm budget on the (shortened) default three-user scenario
  Scenario sc = parse_scenario_file(SCENARIO_DIR "/default.scn");
  sc.duration_s = 64.0;
  ModemConfig run_cfg = cfg;
  run_cfg.master_seed = sc.master_seed;
  const MixOutput mix = mix_scenario(sc, run_cfg, rrc);
  const ReceiverContext ctx3(run_cfg, {1, 2, 3});
  const Detector det3(ctx3, DetectorConfig{});
  const auto fires = det3.sweep(demodulate(mix.signal, rrc, run_cfg));

  const bool pass = detected >= int(0.99 * trials) && tau_ok >= int(0.99 * trials) &&
                    dop_ok >= int(0.99 * trials) &&
                    long(fires.size()) <= 2 * long(mix.truth.size());
  report(4, "detection accuracy and false-alarm budget", pass,
         fmt("detected %d/%d, tau within 1 symbol %d, Doppler within half bin %d; "
             "%zu fires for %zu packets (%.2fx)",
             detected, trials, tau_ok, dop_ok, fires.size(), mix.truth.size(),
             double(fires.size()) / double(mix.truth.size())));
}

// ---------------------------------------------------------------- criterion 5
void criterion_packet_ic(const CollisionSetup& cs, const ReceiverContext& ctx,
                         double* out_fer2) {
  const double fer1 = weak_fer(cs, ctx, 1, 1, EqMode::ic_rake);
  const double fer2 = weak_fer(cs, ctx, 2, 1, EqMode::ic_rake);
  *out_fer2 = fer2;
  const bool pass = fer1 >= 0.90 && fer2 <= 0.05;
  report(5, "packet-IC collision resolution (80% overlap, 6 dB gap)", pass,
         fmt("weak FER %.2f at I2=1, %.3f at I2=2 (%d collisions)", fer1, fer2, cs.pairs));
}

// ---------------------------------------------------------------- criterion 6
void criterion_signal_ic() {
  const ModemConfig cfg;
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const ReceiverContext ctx(cfg, {1, 2});

  // strong-masks-weak: 13 dB gap, near-total overlap
  const int trials = 50;
  CollisionSetup cs = build_collisions(cfg, rrc, trials, 13.0, 0.97, 27.0, 0x600D, 0.06);
  int hidden_at_1 = 0, recovered_at_2 = 0;
  {
    IcConfig ic;
    const PipelineResult r1 = run_pipeline(cs.rb, ctx, ic);
    for (const auto& p : cs.pkts) {
      if (p.user != 2) continue;
      bool seen = false;
      for (const auto& v : r1.verdicts)
        if (v.user == 2 && std::abs(v.tau - p.tau) <= long(cfg.N)) seen = true;
      if (!seen) ++hidden_at_1;
    }
    IcConfig ic2;
    ic2.signal_rounds = 2;
    const PipelineResult r2 = run_pipeline(cs.rb, ctx, ic2);
    for (const auto& p : cs.pkts) {
      if (p.user != 2) continue;
      for (const auto& v : r2.verdicts)
        if (v.user == 2 && v.crc_ok && std::abs(v.tau - p.tau) <= long(cfg.N) &&
            v.payload == p.payload)
          ++recovered_at_2;
    }
  }
  const bool mask_ok = hidden_at_1 >= int(0.9 * trials) && recovered_at_2 >= int(0.9 * trials);

  // FER grid monotone non-increasing along I2 and I3, seed-averaged
  double grid[3][3] = {};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Scenario sc = parse_scenario_file(SCENARIO_DIR "/default.scn");
    sc.duration_s = 48.0;
    sc.master_seed = seed;
    const RunReport rep = run_grid(sc, cfg, 3, 3, {EqMode::ic_rake},
                                   thread_count_from_env());
    for (const auto& c : rep.cells)
      grid[c.i2 - 1][c.i3 - 1] += c.result.fer() / 3.0;
  }
  bool monotone = true;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a + 1 < 3 && grid[a + 1][b] > grid[a][b] + 1e-12) monotone = false;
      if (b + 1 < 3 && grid[a][b + 1] > grid[a][b] + 1e-12) monotone = false;
    }

  report(6, "signal-IC recovery and FER-grid monotonicity", mask_ok && monotone,
         fmt("masked %d/%d at I3=1, recovered %d/%d at I3=2; grid (1,1)=%.3f "
             "(3,3)=%.3f monotone=%s",
             hidden_at_1, trials, recovered_at_2, trials, grid[0][0], grid[2][2],
             monotone ? "yes" : "no"));
}

// ---------------------------------------------------------------- criterion 7
void criterion_scenario_fidelity() {
  const ModemConfig cfg;
  Scenario sc = parse_scenario_file(SCENARIO_DIR "/default.scn");
  sc.duration_s = 1200.0;  // 20 minutes
  const auto truth = plan_scenario(sc, cfg);
  const double util = scenario_utilization(truth, sc.duration_s, cfg);

  Scenario dbl = parse_scenario_file(SCENARIO_DIR "/doubled.scn");
  dbl.duration_s = 1200.0;
  const auto truth2 = plan_scenario(dbl, cfg);
  const double util2 = scenario_utilization(truth2, dbl.duration_s, cfg);

  const bool util_ok = util >= 0.105 && util <= 0.115;
  const bool util2_ok = util2 >= 0.22 && util2 <= 0.24;
  const bool count_ok = truth.size() == 2100;  // see the note below
  // The workload targets are mutually inconsistent: the 3-packets-per-user
  // burst pattern yields 9 packets / 8 s, i.e. 1350 packets in 20 min at 11%
  // utilization, while 2100 packets of 100 ms in 20 min would mean 17.5%
  // utilization. The schedule and both utilization targets are reproduced;
  // the count target cannot be met at the same time and stays red.
  report(7, "scenario fidelity (utilization and packet count)",
         util_ok && util2_ok && count_ok,
         fmt("utilization %.2f%% (target 11+-0.5), doubled %.2f%% (target 23+-1), "
             "packets/20 min %zu (stated 2100)",
             100.0 * util, 100.0 * util2, truth.size()));
}

// ---------------------------------------------------------------- criterion 8
void criterion_regeneration() {
  const ModemConfig cfg;
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const ReceiverContext ctx(cfg, {1});
  Xorshift64Star rng(41);
  std::vector<double> residuals;
  int decoded = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    ChannelRealization ch;
    ch.taps.clear();
    ch.taps.push_back({0.0, {1.0, 0.0}});
    const int extra = 4 + int(rng.next() % 6);  // 5..10 decaying arrivals
    for (int k = 0; k < extra; ++k) {
      const double d = 0.2e-3 + 15e-3 * rng.uniform();
      const double a = (0.3 + 0.5 * rng.uniform()) * std::exp(-d / 7e-3);
      ch.taps.push_back({d, std::polar(a, 2.0 * std::numbers::pi * rng.uniform())});
    }
    const auto chain = helpers::run_chain(1, ch, 15.0, 6000 + std::uint64_t(t), cfg, rrc);
    const TurboResult res = run_turbo(chain.segment, ctx.assets(1), 1.0, cfg, TurboConfig{});
    if (!res.verdict.crc_ok) continue;
    ++decoded;
    const RegenResult rg = regenerate(chain.segment, ctx.assets(1), res.message, res.a1,
                                      cfg, EstimatorConfig{});
    if (!rg.ok) continue;
    const int lo = 2 * cfg.frame_offset(), hi = lo + 2 * cfg.N;
    double err = 0.0, ref = 0.0;
    for (int n = lo; n < hi; ++n) {
      err += std::norm(chain.segment_clean[std::size_t(n)] - rg.r_hat[std::size_t(n)]);
      ref += std::norm(chain.segment_clean[std::size_t(n)]);
    }
    residuals.push_back(10.0 * std::log10(err / ref));
  }
  std::sort(residuals.begin(), residuals.end());
  const double median = residuals[residuals.size() / 2];
  const bool pass = median < -15.0 && int(residuals.size()) >= trials * 9 / 10;
  report(8, "regeneration fidelity (median residual at 15 dB)", pass,
         fmt("median %.1f dB over %zu regenerated packets (%d decoded)", median,
             residuals.size(), decoded));
}

// ---------------------------------------------------------------- criterion 9
void criterion_determinism() {
  const ModemConfig cfg;
  Scenario sc = parse_scenario_file(SCENARIO_DIR "/smoke.scn");
  const RunReport a = run_grid(sc, cfg, 2, 2, {EqMode::ic_rake, EqMode::linear});
  const RunReport b = run_grid(sc, cfg, 2, 2, {EqMode::ic_rake, EqMode::linear});
  std::ostringstream sa, sb;
  write_report_csv(sa, a);
  write_report_csv(sb, b);
  const bool pass = sa.str() == sb.str();
  report(9, "determinism (repeated grid runs are byte-identical)", pass,
         fmt("%zu-byte reports %s", sa.str().size(), pass ? "identical" : "differ"));
}

}  // namespace

int main() {
  const double t0 = now_s();
  criterion_loopback();
  criterion_estimator_oracle();

  // shared collision set for criteria 3 and 5: 80% overlap, 6 dB gap,
  // weak packet near 15 dB
  const ModemConfig cfg;
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const ReceiverContext col_ctx(cfg, {1, 2});
  const CollisionSetup collisions =
      build_collisions(cfg, rrc, 100, 6.0, 0.80, 21.0, 0xCA11, 0.0);

  criterion_equalizer_ordering(collisions, col_ctx);
  criterion_detection();
  double fer2 = 1.0;
  criterion_packet_ic(collisions, col_ctx, &fer2);
  criterion_signal_ic();
  criterion_scenario_fidelity();
  criterion_regeneration();
  criterion_determinism();

  std::printf("%d of 9 criteria passed, %.1f s total\n", 9 - g_failures, now_s() - t0);
  return g_failures == 0 ? 0 : 1;
}
