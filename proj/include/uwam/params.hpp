#pragma once

#include <cstdint>

namespace uwam {

// Waveform numerology and bit-chain sizing. Rates in Hz, delays in the unit
// noted at each field. Defaults describe the 32 kHz / 6 kSym/s packet used
// throughout; everything downstream reads these instead of hard-coding.
struct ModemConfig {
  double fs = 192000.0;  // passband sampling rate
  double fc = 32000.0;   // carrier frequency
  double Fd = 6000.0;    // symbol rate
  int sps = 32;          // passband samples per symbol (fs/Fd)
  int K = 16;            // passband -> baseband decimation (fs/Fds)
  int N = 600;           // symbols per packet
  int Nfft = 1024;       // per-branch FFT length (>= N plus reverberation tail)

  double rolloff = 0.2;
  int rrc_half_len = 160;  // pulse support is [-rrc_half_len, rrc_half_len] at fs

  int payload_bits = 176;
  int crc_bits = 16;
  int tail_bits = 8;
  int coded_bits = 600;  // 3 * (payload + crc + tail)

  std::uint64_t master_seed = 1;

  double Fds() const { return 2.0 * Fd; }
  int seg_len() const { return 2 * Nfft; }  // extracted segment length at Fds
  // Symbol index of the first data symbol inside the Nfft processing frame;
  // chosen so the packet sits in the centre with equal guard on both sides.
  int frame_offset() const { return (Nfft - N) / 2; }
  double packet_core_s() const { return double(N) / Fd; }
};

// Dichotomous coordinate descent sizing. The update budget is sized so the
// solver lands within 1e-3 of a direct solve on well-conditioned systems.
struct DcdConfig {
  int step_bits = 20;        // number of step halvings available
  int updates_per_dim = 32;  // successful-update budget, times system size
};

// Sparse frequency-domain channel estimator.
struct EstimatorConfig {
  int max_paths = 30;       // support cardinality cap
  int upsilon = 150;        // delay window, symbols, each side of zero
  double kappa = 4e-4;      // support threshold relative to the correlation peak
  double eps_scale = 1e-3;  // ridge term = eps_scale * rho(0) / Nfft
  bool gram_pilot_only = false;  // build the Gram from the pilot spectrum alone
  // Minimum index spacing between picked taps. The half-symbol-offset branch
  // sees genuinely adjacent taps (the pulse cluster around each arrival), so
  // the default accepts neighbours; the white pilot keeps the Gram well
  // conditioned regardless.
  int exclusion_radius = 0;
  DcdConfig dcd{};
};

// Cross-ambiguity packet detector.
struct DetectorConfig {
  int Q = 300;            // window step, symbols (half a packet)
  int Nd = 2;             // Doppler bins each side of zero
  double delta_f = 10.0;  // Doppler bin spacing, Hz (inverse packet duration)
  double nu = 50.0;       // clear-peak test factor
  int neighbor_gap = 3;   // windows compared in the occupancy test
};

enum class EqMode { rake, linear, ic_rake };

// Per-segment turbo loop.
struct TurboConfig {
  int iters = 9;  // I1
  EqMode mode = EqMode::ic_rake;
  bool early_exit = true;     // stop once the decode is stable and CRC-clean
  double snr_init_db = 10.0;  // bootstrap SNR for the linear-equalizer ridge
  double fine_doppler_range_hz = 10.0;  // one detector bin each side
  int fine_doppler_halvings = 14;
  // Resampling feedback is frozen once the combined residual falls below
  // this; the per-iteration phase-ramp removal keeps correcting what is
  // left, and the loop reaches an exact fixed point instead of chasing the
  // data-induced estimator bias.
  double a1_update_min_hz = 0.5;
  EstimatorConfig est{};
};

// Interference-cancellation orchestration.
struct IcConfig {
  int packet_rounds = 1;  // I2
  int signal_rounds = 1;  // I3
  double packet_gate_snr_db = 0.0;  // neighbour must clear this to be subtracted
  bool packet_gate_crc = false;     // optionally also require a CRC pass
  bool signal_gate_crc = true;      // baseband subtraction requires a CRC pass
  double regen_energy_factor = 1.5;
  bool regen_literal_ramp = false;  // full-carrier ramp variant of regeneration
  TurboConfig turbo{};
  DetectorConfig detector{};
};

}  // namespace uwam
