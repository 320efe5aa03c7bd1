#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "uwam/chanest.hpp"
#include "uwam/fft.hpp"
#include "uwam/params.hpp"

namespace uwam {

inline EqMode parse_eq_mode(const std::string& s) {
  if (s == "rake") return EqMode::rake;
  if (s == "linear") return EqMode::linear;
  if (s == "ic-rake" || s == "ic_rake") return EqMode::ic_rake;
  throw std::invalid_argument("unknown equalizer mode '" + s + "'");
}

inline const char* eq_mode_name(EqMode m) {
  switch (m) {
    case EqMode::rake: return "rake";
    case EqMode::linear: return "linear";
    default: return "ic-rake";
  }
}

// Frequency-domain equalization of one branch spectrum.
//   rake:    Z = k H* X             with k = 1 / sum |h_m|^2
//   linear:  Z = H* X / (|H|^2 + eps_le)
//   ic-rake: Z = S + k H* (X - S H)
// S is the prior-iteration transmit estimate (pilot only before any decode).
inline std::vector<cplx> equalize(const std::vector<cplx>& X, const ChannelEstimate& est,
                                  const std::vector<cplx>& S, EqMode mode,
                                  double eps_le) {
  const double hp = est.power();
  if (hp <= 0.0) throw std::domain_error("equalize: degenerate all-zero channel");
  const double k = 1.0 / hp;
  std::vector<cplx> Y(X.size());
  switch (mode) {
    case EqMode::rake:
      for (std::size_t i = 0; i < X.size(); ++i) Y[i] = k * std::conj(est.H[i]) * X[i];
      break;
    case EqMode::linear:
      for (std::size_t i = 0; i < X.size(); ++i)
        Y[i] = std::conj(est.H[i]) * X[i] / (std::norm(est.H[i]) + eps_le);
      break;
    case EqMode::ic_rake:
      for (std::size_t i = 0; i < X.size(); ++i)
        Y[i] = S[i] + k * std::conj(est.H[i]) * (X[i] - S[i] * est.H[i]);
      break;
  }
  return Y;
}

// Pilot-referenced SNR: the real part of a perfectly equalized symbol is the
// pilot chip, so any deviation there is treated as noise.
inline double snr_estimate(const std::vector<cplx>& y, const std::vector<double>& pilot) {
  const std::size_t n = std::min(y.size(), pilot.size());
  double sig = 0.0, err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sig += pilot[i] * pilot[i];
    const double e = y[i].real() - pilot[i];
    err += e * e;
  }
  if (err <= 0.0) return std::numeric_limits<double>::infinity();
  return sig / err;
}

struct MrcResult {
  std::vector<cplx> y;
  double w1 = 0.5, w2 = 0.5;
  double snr1 = 0.0, snr2 = 0.0;
  double a1 = 1.0;
};

// SNR-weighted maximal-ratio combining of the two branches; the branch
// Doppler estimates are combined with the same weights.
inline MrcResult mrc_combine(const std::vector<cplx>& y1, const std::vector<cplx>& y2,
                             const std::vector<double>& pilot, double a1_b1,
                             double a1_b2) {
  MrcResult r;
  r.snr1 = snr_estimate(y1, pilot);
  r.snr2 = snr_estimate(y2, pilot);
  if (std::isinf(r.snr1) && std::isinf(r.snr2)) {
    r.w1 = r.w2 = 0.5;
  } else if (std::isinf(r.snr1)) {
    r.w1 = 1.0;
    r.w2 = 0.0;
  } else if (std::isinf(r.snr2)) {
    r.w1 = 0.0;
    r.w2 = 1.0;
  } else {
    const double s1 = std::sqrt(r.snr1), s2 = std::sqrt(r.snr2);
    r.w1 = s1 / (s1 + s2);
    r.w2 = s2 / (s1 + s2);
  }
  const std::size_t n = std::min(y1.size(), y2.size());
  r.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.y[i] = r.w1 * y1[i] + r.w2 * y2[i];
  r.a1 = r.w1 * a1_b1 + r.w2 * a1_b2;
  return r;
}

}  // namespace uwam
