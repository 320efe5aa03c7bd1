#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "uwam/dcd.hpp"
#include "uwam/fft.hpp"
#include "uwam/params.hpp"

namespace uwam {

struct ChannelEstimate {
  std::vector<int> support;  // delays mod Nfft, inside [-upsilon, upsilon] wrapped
  std::vector<cplx> amps;
  std::vector<cplx> H;  // frequency response, length Nfft
  bool fallback = false;
  bool dcd_converged = true;
  double peak_mag2 = 0.0;

  double power() const {
    double p = 0.0;
    for (const auto& a : amps) p += std::norm(a);
    return p;
  }
};

// rho(n) = sum_k |S(k)|^2 e^{-j 2 pi k n / Nfft}; the autocorrelation kernel
// the Gram matrix is read from.
inline std::vector<cplx> gram_kernel(const std::vector<cplx>& S) {
  std::vector<cplx> mag2(S.size());
  for (std::size_t k = 0; k < S.size(); ++k) mag2[k] = {std::norm(S[k]), 0.0};
  return fft(std::move(mag2));
}

// G_{p,q} = rho((m_q - m_p) mod Nfft) + eps * delta_{pq}. Hermitian by the
// conjugate symmetry of rho.
inline std::vector<std::vector<cplx>> build_gram(const std::vector<int>& support,
                                                 const std::vector<cplx>& rho,
                                                 double eps) {
  const int m = int(support.size());
  const int nfft = int(rho.size());
  std::vector<std::vector<cplx>> G(std::size_t(m), std::vector<cplx>(std::size_t(m), cplx{}));
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      const int d = ((support[std::size_t(q)] - support[std::size_t(p)]) % nfft + nfft) % nfft;
      G[std::size_t(p)][std::size_t(q)] = rho[std::size_t(d)];
      if (p == q) G[std::size_t(p)][std::size_t(q)] += eps;
    }
  }
  return G;
}

// Two-step sparse estimator: support from the maxima of the cross-correlation
// gamma = ifft(Z conj(S)), amplitudes from the regularized normal equations
// solved with DCD, frequency response H = B c.
//
// rho must be gram_kernel(S) (or of the pilot-only spectrum when the
// pilot-only Gram variant is selected); recompute it whenever S changes.
inline ChannelEstimate estimate_channel(const std::vector<cplx>& Z,
                                        const std::vector<cplx>& S,
                                        const std::vector<cplx>& rho,
                                        const EstimatorConfig& cfg) {
  const int nfft = int(Z.size());
  std::vector<cplx> prod(std::size_t(nfft), cplx{});
  for (int k = 0; k < nfft; ++k)
    prod[std::size_t(k)] = Z[std::size_t(k)] * std::conj(S[std::size_t(k)]);
  const std::vector<cplx> gamma = ifft(std::move(prod));

  // candidate window: [0, upsilon] and [nfft - upsilon, nfft)
  std::vector<int> window;
  window.reserve(std::size_t(2 * cfg.upsilon + 1));
  for (int n = 0; n <= cfg.upsilon; ++n) window.push_back(n);
  for (int n = nfft - cfg.upsilon; n < nfft; ++n) window.push_back(n);

  double peak = 0.0;
  for (int n : window) peak = std::max(peak, std::norm(gamma[std::size_t(n)]));

  ChannelEstimate est;
  est.peak_mag2 = peak;
  est.H.assign(std::size_t(nfft), cplx{});
  if (peak <= 0.0) {
    est.support = {0};
    est.amps = {cplx{}};
    est.fallback = true;
    return est;
  }

  const double threshold = cfg.kappa * peak;
  std::vector<int> cand;
  for (int n : window)
    if (std::norm(gamma[std::size_t(n)]) >= threshold) cand.push_back(n);
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    const double ma = std::norm(gamma[std::size_t(a)]);
    const double mb = std::norm(gamma[std::size_t(b)]);
    return ma > mb || (ma == mb && a < b);
  });
  // greedy pick in descending magnitude, optional circular exclusion radius
  for (int n : cand) {
    if (int(est.support.size()) >= cfg.max_paths) break;
    bool excluded = false;
    if (cfg.exclusion_radius > 0) {
      for (int s : est.support) {
        int d = std::abs(n - s);
        d = std::min(d, nfft - d);
        if (d <= cfg.exclusion_radius) {
          excluded = true;
          break;
        }
      }
    }
    if (!excluded) est.support.push_back(n);
  }

  const double eps = cfg.eps_scale * rho[0].real() / double(nfft);
  const auto G = build_gram(est.support, rho, eps);
  std::vector<cplx> xi(est.support.size());
  for (std::size_t q = 0; q < est.support.size(); ++q)
    xi[q] = double(nfft) * gamma[std::size_t(est.support[q])];
  const DcdResult sol = dcd_solve(G, xi, cfg.dcd);
  est.amps = sol.solution;
  est.dcd_converged = sol.converged;

  std::vector<cplx> impulse(std::size_t(nfft), cplx{});
  for (std::size_t q = 0; q < est.support.size(); ++q)
    impulse[std::size_t(est.support[q])] = est.amps[q];
  est.H = fft(std::move(impulse));
  return est;
}

}  // namespace uwam
