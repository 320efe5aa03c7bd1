#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwam/channel.hpp"
#include "uwam/frame.hpp"
#include "uwam/params.hpp"
#include "uwam/prng.hpp"
#include "uwam/signal_io.hpp"

namespace uwam {

struct ScenarioError : std::runtime_error {
  ScenarioError(int line, const std::string& msg)
      : std::runtime_error("scenario line " + std::to_string(line) + ": " + msg),
        line_no(line) {}
  int line_no;
};

struct UserSchedule {
  int user = 1;
  double start_s = 0.05;
  int packets_per_burst = 3;
  double packet_period_s = 0.4;
  double amplitude = 1.0;
  ChannelRealization channel{};
  double clock_skew = 0.0;  // relative rate error; resolved in resolve_skews()
  bool skew_explicit = false;
};

// Asynchronous bursty multiuser scenario. Clock skew perturbs the schedule
// (burst and packet periods run at rate 1 + skew); the waveform timescale is
// ChannelRealization::a1, which is a separate physical effect.
struct Scenario {
  double duration_s = 64.0;
  std::uint64_t master_seed = 1;
  double burst_period_s = 8.0;
  double noise_snr_db = std::numeric_limits<double>::infinity();
  int noise_ref_user = 1;
  double clock_skew_max = 0.01;
  double impulse_rate_hz = 0.0;
  double impulse_amplitude = 0.0;
  std::vector<UserSchedule> users;
};

struct TruthRecord {
  int user = 0;
  double t_tx = 0.0;  // first symbol peak instant, seconds
  BitVec payload;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& v, int line) {
  if (v == "inf" || v == "INF" || v == "Inf")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return d;
  } catch (const std::exception&) {
    throw ScenarioError(line, "bad number '" + v + "'");
  }
}

// "delay_ms:mag[@phase_deg], ..."
inline std::vector<ChannelTap> parse_taps(const std::string& v, int line) {
  std::vector<ChannelTap> taps;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ScenarioError(line, "tap '" + item + "' needs delay_ms:magnitude");
    const double delay_ms = parse_number(trim(item.substr(0, colon)), line);
    std::string rest = trim(item.substr(colon + 1));
    double phase_deg = 0.0;
    const std::size_t at = rest.find('@');
    if (at != std::string::npos) {
      phase_deg = parse_number(trim(rest.substr(at + 1)), line);
      rest = trim(rest.substr(0, at));
    }
    const double mag = parse_number(rest, line);
    taps.push_back({delay_ms * 1e-3,
                    std::polar(mag, phase_deg * std::numbers::pi / 180.0)});
  }
  if (taps.empty()) throw ScenarioError(line, "empty tap list");
  return taps;
}

}  // namespace detail

inline Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  sc.users.clear();
  UserSchedule* cur = nullptr;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ScenarioError(line, "unterminated section header");
      std::stringstream hs(s.substr(1, s.size() - 2));
      std::string kw;
      int id = 0;
      hs >> kw >> id;
      if (kw != "user" || id < 1)
        throw ScenarioError(line, "expected [user <id>]");
      UserSchedule u;
      u.user = id;
      sc.users.push_back(u);
      cur = &sc.users.back();
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw ScenarioError(line, "expected key = value");
    const std::string key = detail::trim(s.substr(0, eq));
    const std::string val = detail::trim(s.substr(eq + 1));
    if (!cur) {
      if (key == "duration") sc.duration_s = detail::parse_number(val, line);
      else if (key == "master_seed") sc.master_seed = std::uint64_t(detail::parse_number(val, line));
      else if (key == "burst_period") sc.burst_period_s = detail::parse_number(val, line);
      else if (key == "noise_snr_db") sc.noise_snr_db = detail::parse_number(val, line);
      else if (key == "noise_ref_user") sc.noise_ref_user = int(detail::parse_number(val, line));
      else if (key == "clock_skew_max") sc.clock_skew_max = detail::parse_number(val, line);
      else if (key == "impulse_rate") sc.impulse_rate_hz = detail::parse_number(val, line);
      else if (key == "impulse_amplitude") sc.impulse_amplitude = detail::parse_number(val, line);
      else throw ScenarioError(line, "unknown key '" + key + "'");
    } else {
      if (key == "start") cur->start_s = detail::parse_number(val, line);
      else if (key == "packets_per_burst") cur->packets_per_burst = int(detail::parse_number(val, line));
      else if (key == "packet_period") cur->packet_period_s = detail::parse_number(val, line);
      else if (key == "amplitude") cur->amplitude = detail::parse_number(val, line);
      else if (key == "a1") cur->channel.a1 = detail::parse_number(val, line);
      else if (key == "snr_db") cur->channel.snr_db = detail::parse_number(val, line);
      else if (key == "taps") cur->channel.taps = detail::parse_taps(val, line);
      else if (key == "clock_skew") {
        cur->clock_skew = detail::parse_number(val, line);
        cur->skew_explicit = true;
      } else throw ScenarioError(line, "unknown user key '" + key + "'");
    }
  }
  if (sc.users.empty()) throw ScenarioError(line, "scenario has no users");
  return sc;
}

inline Scenario parse_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario: " + path);
  return parse_scenario(f);
}

// Draw each user's clock skew from the master seed unless given explicitly.
inline void resolve_skews(Scenario& sc) {
  for (auto& u : sc.users) {
    if (u.skew_explicit) continue;
    Xorshift64Star rng(mix_seed(sc.master_seed, 0x5c11ULL + std::uint64_t(u.user)));
    u.clock_skew = sc.clock_skew_max * (2.0 * rng.uniform() - 1.0);
  }
}

inline BitVec random_payload(const Scenario& sc, int user, int packet_index,
                             int payload_bits) {
  Xorshift64Star rng(
      mix_seed(sc.master_seed, mix_seed(std::uint64_t(user), std::uint64_t(packet_index))));
  BitVec bits(std::size_t(payload_bits), 0);
  for (auto& b : bits) b = std::uint8_t(rng.next() & 1u);
  return bits;
}

// Schedule realization without waveform synthesis.
inline std::vector<TruthRecord> plan_scenario(Scenario sc, const ModemConfig& cfg) {
  resolve_skews(sc);
  std::vector<TruthRecord> truth;
  for (const auto& u : sc.users) {
    const double rate = 1.0 + u.clock_skew;
    int idx = 0;
    for (int b = 0;; ++b) {
      const double t_burst = u.start_s + double(b) * sc.burst_period_s * rate;
      if (t_burst + cfg.packet_core_s() > sc.duration_s) break;
      for (int j = 0; j < u.packets_per_burst; ++j) {
        const double t = t_burst + double(j) * u.packet_period_s * rate;
        if (t + cfg.packet_core_s() > sc.duration_s) continue;
        truth.push_back({u.user, t, random_payload(sc, u.user, idx, cfg.payload_bits)});
        ++idx;
      }
    }
  }
  std::sort(truth.begin(), truth.end(),
            [](const TruthRecord& a, const TruthRecord& b) {
              return a.t_tx < b.t_tx || (a.t_tx == b.t_tx && a.user < b.user);
            });
  return truth;
}

inline double scenario_utilization(const std::vector<TruthRecord>& truth,
                                   double duration_s, const ModemConfig& cfg) {
  return double(truth.size()) * cfg.packet_core_s() / duration_s;
}

struct MixOutput {
  std::vector<double> signal;  // passband at fs
  std::vector<TruthRecord> truth;
  double utilization = 0.0;
  double noise_sigma = 0.0;
};

// Passband superposition of every user's channel-filtered packets at their
// skewed clock times plus one shared noise process. Additive and
// deterministic for a fixed seed.
inline MixOutput mix_scenario(Scenario sc, const ModemConfig& cfg,
                              const RrcFilter& rrc, bool with_noise = true) {
  resolve_skews(sc);
  MixOutput out;
  out.truth = plan_scenario(sc, cfg);
  out.utilization = scenario_utilization(out.truth, sc.duration_s, cfg);
  out.signal.assign(std::size_t(std::ceil(sc.duration_s * cfg.fs)), 0.0);

  std::map<int, const UserSchedule*> by_user;
  for (const auto& u : sc.users) by_user[u.user] = &u;

  double ref_power = 0.0;
  ModemConfig cfg_tx = cfg;
  cfg_tx.master_seed = sc.master_seed;
  for (const auto& rec : out.truth) {
    const UserSchedule& u = *by_user.at(rec.user);
    ChannelRealization ch = u.channel;
    for (auto& tap : ch.taps) tap.amp *= u.amplitude;
    const SuperimposedFrame f = build_frame(rec.payload, rec.user, cfg_tx);
    const PassbandPacket clean = modulate(f, rrc, cfg_tx);
    const PassbandPacket rx = apply_channel(clean, ch, cfg_tx);
    const long t0 = std::lround(rec.t_tx * cfg.fs);
    for (std::size_t j = 0; j < rx.samples.size(); ++j) {
      const long idx = t0 + long(j) - rx.origin;
      if (idx < 0 || idx >= long(out.signal.size())) continue;
      out.signal[std::size_t(idx)] += rx.samples[j];
    }
    if (rec.user == sc.noise_ref_user && ref_power == 0.0) {
      double p = 0.0;
      const long core = long(cfg.N - 1) * cfg.sps;
      for (long i = 0; i <= core; ++i)
        p += rx.samples[std::size_t(rx.origin + i)] * rx.samples[std::size_t(rx.origin + i)];
      ref_power = p / double(core + 1);
    }
  }

  if (with_noise && !std::isinf(sc.noise_snr_db)) {
    out.noise_sigma = noise_sigma_for_snr(ref_power, sc.noise_snr_db, cfg);
    add_noise_inplace(out.signal, out.noise_sigma, mix_seed(sc.master_seed, 0xA01eULL));
  }
  if (sc.impulse_rate_hz > 0.0)
    impulse_interference_inplace(out.signal, sc.impulse_rate_hz, sc.impulse_amplitude,
                                 mix_seed(sc.master_seed, 0x1337ULL), cfg);
  return out;
}

inline void write_truth_csv(const std::string& path,
                            const std::vector<TruthRecord>& truth) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "user,t_tx,payload_hex\n";
  char buf[64];
  for (const auto& r : truth) {
    std::snprintf(buf, sizeof buf, "%d,%.9f,", r.user, r.t_tx);
    f << buf << bits_to_hex(r.payload) << "\n";
  }
}

inline std::vector<TruthRecord> read_truth_csv(const std::string& path,
                                               int payload_bits) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open truth csv: " + path);
  std::vector<TruthRecord> truth;
  std::string line;
  std::getline(f, line);  // header
  while (std::getline(f, line)) {
    if (detail::trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string user_s, t_s, hex_s;
    std::getline(ss, user_s, ',');
    std::getline(ss, t_s, ',');
    std::getline(ss, hex_s, ',');
    TruthRecord r;
    r.user = std::stoi(user_s);
    r.t_tx = std::stod(t_s);
    r.payload = hex_to_bits(detail::trim(hex_s), payload_bits);
    truth.push_back(std::move(r));
  }
  return truth;
}

}  // namespace uwam
