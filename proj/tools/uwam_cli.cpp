#include <chrono>
#include <fstream>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uwam/uwam.hpp"

namespace {

using namespace uwam;

bool is_signal_path(const std::string& path) {
  auto ends_with = [&](const char* suf) {
    const std::string s(suf);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  return ends_with(".f32") || ends_with(".raw") || ends_with(".pcm");
}

std::vector<EqMode> parse_modes(const std::string& csv) {
  std::vector<EqMode> modes;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) modes.push_back(parse_eq_mode(item));
  }
  if (modes.empty()) throw std::invalid_argument("--modes is empty");
  return modes;
}

int cmd_simulate(const std::string& scn_path, const std::string& out_path,
                 std::string truth_path, std::uint64_t seed, bool seed_set) {
  Scenario sc = parse_scenario_file(scn_path);
  if (seed_set) sc.master_seed = seed;
  const ModemConfig cfg;
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  ModemConfig run_cfg = cfg;
  run_cfg.master_seed = sc.master_seed;
  const MixOutput mix = mix_scenario(sc, run_cfg, rrc);
  write_signal_f32(out_path, mix.signal);
  if (truth_path.empty()) truth_path = out_path + ".truth.csv";
  write_truth_csv(truth_path, mix.truth);
  std::printf("wrote %zu samples (%.1f s) to %s\n", mix.signal.size(),
              double(mix.signal.size()) / cfg.fs, out_path.c_str());
  std::printf("packets %zu, utilization %.2f%%, truth %s\n", mix.truth.size(),
              100.0 * mix.utilization, truth_path.c_str());
  return 0;
}

// CSV surfaces (rows: doppler_bin; columns: tau) for every fired window
void dump_caf_surfaces(const std::string& prefix, const std::vector<cplx>& rb,
                       const ReceiverContext& ctx, int limit = 24) {
  const Detector det(ctx, DetectorConfig{});
  const auto dets = det.sweep(rb);
  int written = 0;
  for (const auto& d : dets) {
    if (written >= limit) break;
    const auto surface = det.caf_surface(rb, d.user, d.q);
    char name[512];
    std::snprintf(name, sizeof name, "%s_u%d_q%ld.csv", prefix.c_str(), d.user, d.q);
    std::ofstream f(name);
    if (!f) throw std::runtime_error(std::string("cannot open for writing: ") + name);
    f << "doppler_bin";
    for (std::size_t tau = 0; tau < surface[0].size(); ++tau) f << ",tau" << tau;
    f << "\n";
    const int nd = int(surface.size()) / 2;
    char buf[32];
    for (int fi = 0; fi < int(surface.size()); ++fi) {
      f << (fi - nd);
      for (const auto& v : surface[std::size_t(fi)]) {
        std::snprintf(buf, sizeof buf, ",%.6e", std::abs(v));
        f << buf;
      }
      f << "\n";
    }
    ++written;
  }
  std::printf("wrote %d CAF surface dumps to %s_*.csv\n", written, prefix.c_str());
}

int cmd_receive(const std::string& input, const std::string& truth_path, int i2, int i3,
                const std::string& eq, std::uint64_t seed, bool seed_set,
                const std::string& report_path, const std::string& verdicts_path,
                const std::string& diag_path, const std::string& caf_prefix,
                const std::string& users_csv) {
  const ModemConfig base_cfg;
  ModemConfig cfg = base_cfg;
  std::vector<double> signal;
  std::vector<TruthRecord> truth;
  std::vector<int> user_ids;

  if (is_signal_path(input)) {
    if (seed_set) cfg.master_seed = seed;
    signal = read_signal_f32(input);
    if (!truth_path.empty()) truth = read_truth_csv(truth_path, cfg.payload_bits);
    std::stringstream us(users_csv);
    std::string item;
    while (std::getline(us, item, ','))
      if (!item.empty()) user_ids.push_back(std::stoi(item));
    for (const auto& t : truth)
      if (std::find(user_ids.begin(), user_ids.end(), t.user) == user_ids.end())
        user_ids.push_back(t.user);
    if (user_ids.empty()) throw std::invalid_argument("--users is empty");
  } else {
    Scenario sc = parse_scenario_file(input);
    if (seed_set) sc.master_seed = seed;
    cfg.master_seed = sc.master_seed;
    const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
    MixOutput mix = mix_scenario(sc, cfg, rrc);
    signal = std::move(mix.signal);
    truth = std::move(mix.truth);
    for (const auto& u : sc.users) user_ids.push_back(u.user);
  }

  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const ReceiverContext ctx(cfg, user_ids);
  const std::vector<cplx> rb = demodulate(signal, rrc, cfg);
  if (!caf_prefix.empty()) dump_caf_surfaces(caf_prefix, rb, ctx);

  IcConfig ic;
  ic.packet_rounds = i2;
  ic.signal_rounds = i3;
  ic.turbo.mode = parse_eq_mode(eq);

  const auto t0 = std::chrono::steady_clock::now();
  PipelineResult pr = run_pipeline(rb, ctx, ic, !diag_path.empty());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int crc_pass = 0;
  for (const auto& v : pr.verdicts) crc_pass += v.crc_ok ? 1 : 0;
  std::printf("detections %ld, verdicts %zu (%d CRC pass), %.1f s\n",
              pr.detections_total, pr.verdicts.size(), crc_pass, secs);

  if (!verdicts_path.empty()) write_verdicts_csv(verdicts_path, pr.verdicts);
  if (!diag_path.empty()) write_diag_csv(diag_path, pr.diag);

  if (!truth.empty()) {
    const ScoreResult sr = score(pr.verdicts, truth, cfg);
    std::printf("FER %.4f%% (%d/%d lost, %d undetected errors)\n", 100.0 * sr.fer(),
                sr.lost, sr.total, sr.undetected_errors);
    for (const auto& [user, lt] : sr.per_user)
      std::printf("  user %d: %d/%d lost\n", user, lt.first, lt.second);
    if (!report_path.empty()) {
      RunReport rep;
      rep.seed = cfg.master_seed;
      rep.total_packets = sr.total;
      GridCell cell;
      cell.mode = ic.turbo.mode;
      cell.i2 = i2;
      cell.i3 = i3;
      cell.result = sr;
      cell.detections = pr.detections_total;
      rep.cells.push_back(cell);
      write_report_csv(report_path, rep);
    }
  } else if (!report_path.empty()) {
    std::fprintf(stderr, "no ground truth available, report not written\n");
    return 1;
  }
  return 0;
}

int cmd_grid(const std::string& scn_path, int i2_max, int i3_max, const std::string& modes,
             std::uint64_t seed, bool seed_set, const std::string& report_path) {
  Scenario sc = parse_scenario_file(scn_path);
  if (seed_set) sc.master_seed = seed;
  const ModemConfig cfg;
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep = run_grid(sc, cfg, i2_max, i3_max, parse_modes(modes),
                           thread_count_from_env());
  rep.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << format_report_table(rep);
  if (!report_path.empty()) {
    write_report_csv(report_path, rep);
    std::printf("\nwrote %s\n", report_path.c_str());
  }
  return 0;
}

int cmd_packet(int user, const std::string& payload_hex, const std::string& out_path,
               std::uint64_t seed, bool seed_set) {
  ModemConfig cfg;
  if (seed_set) cfg.master_seed = seed;
  BitVec payload;
  if (payload_hex.empty()) {
    Xorshift64Star rng(mix_seed(cfg.master_seed, std::uint64_t(user)));
    payload.resize(std::size_t(cfg.payload_bits));
    for (auto& b : payload) b = std::uint8_t(rng.next() & 1u);
  } else {
    payload = hex_to_bits(payload_hex, cfg.payload_bits);
  }
  const RrcFilter rrc = rrc_design(cfg.rolloff, cfg.rrc_half_len, cfg.sps);
  const PassbandPacket pkt = modulate(build_frame(payload, user, cfg), rrc, cfg);
  write_signal_f32(out_path, pkt.samples);
  std::printf("wrote %zu samples to %s (payload %s)\n", pkt.samples.size(),
              out_path.c_str(), bits_to_hex(payload).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-carrier underwater-acoustic modem simulator and receiver"};
  app.require_subcommand(1);

  std::string scenario, out, truth, report, verdicts, diag, input, caf_prefix;
  std::string eq = "ic-rake";
  std::string users_csv = "1,2,3";
  std::string modes = "ic-rake";
  std::string payload_hex;
  int i2 = 1, i3 = 1, i2_max = 3, i3_max = 3, user = 1;
  std::uint64_t seed = 0;

  auto* sim = app.add_subcommand("simulate", "synthesize a scenario signal");
  sim->add_option("scenario", scenario, "scenario file")->required();
  sim->add_option("--out", out, "output signal (raw float32 LE @ 192 kHz)")->required();
  sim->add_option("--truth", truth, "ground-truth CSV (default <out>.truth.csv)");
  auto* sim_seed = sim->add_option("--seed", seed, "override master seed");

  auto* rx = app.add_subcommand("receive", "run the receiver on a signal or scenario");
  rx->add_option("input", input, "signal file (.f32/.raw/.pcm) or scenario file")->required();
  rx->add_option("--truth", truth, "ground-truth CSV for signal-file input");
  rx->add_option("--i2", i2, "packet-IC rounds")->check(CLI::PositiveNumber);
  rx->add_option("--i3", i3, "signal-IC rounds")->check(CLI::PositiveNumber);
  rx->add_option("--eq", eq, "equalizer: rake | linear | ic-rake");
  auto* rx_seed = rx->add_option("--seed", seed, "override master seed");
  rx->add_option("--report", report, "write FER report CSV");
  rx->add_option("--verdicts", verdicts, "write verdict log CSV");
  rx->add_option("--diag", diag, "write per-iteration diagnostics CSV");
  rx->add_option("--dump-caf", caf_prefix, "dump CAF surfaces of fired windows (CSV prefix)");
  rx->add_option("--users", users_csv, "user ids to search for (signal-file input)");

  auto* gr = app.add_subcommand("grid", "FER grid over I2, I3 and equalizer modes");
  gr->add_option("scenario", scenario, "scenario file")->required();
  gr->add_option("--i2-max", i2_max, "largest I2")->check(CLI::PositiveNumber);
  gr->add_option("--i3-max", i3_max, "largest I3")->check(CLI::PositiveNumber);
  gr->add_option("--modes", modes, "comma list of equalizer modes");
  auto* gr_seed = gr->add_option("--seed", seed, "override master seed");
  gr->add_option("--report", report, "write grid CSV");

  auto* pk = app.add_subcommand("packet", "dump one modulated packet");
  pk->add_option("--user", user, "user id")->check(CLI::PositiveNumber);
  pk->add_option("--payload-hex", payload_hex, "payload as hex (44 digits)");
  pk->add_option("--out", out, "output signal file")->required();
  auto* pk_seed = pk->add_option("--seed", seed, "override master seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(scenario, out, truth, seed, !sim_seed->empty());
    if (rx->parsed())
      return cmd_receive(input, truth, i2, i3, eq, seed, !rx_seed->empty(), report,
                         verdicts, diag, caf_prefix, users_csv);
    if (gr->parsed())
      return cmd_grid(scenario, i2_max, i3_max, modes, seed, !gr_seed->empty(), report);
    if (pk->parsed()) return cmd_packet(user, payload_hex, out, seed, !pk_seed->empty());
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
