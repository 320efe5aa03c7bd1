#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "uwam/fft.hpp"
#include "uwam/params.hpp"

namespace uwam {

struct DcdResult {
  std::vector<cplx> solution;
  bool converged = true;
  int updates = 0;
};

// Leading-element dichotomous coordinate descent for G c = xi with G
// Hermitian positive definite. The complex system is recast as the real
// 2M x 2M system [[Re G, -Im G], [Im G, Re G]]; coordinate steps are powers
// of two, halved when the leading residual no longer supports an update.
inline DcdResult dcd_solve(const std::vector<std::vector<cplx>>& G,
                           const std::vector<cplx>& xi, const DcdConfig& cfg = {}) {
  const int m = int(G.size());
  if (m == 0 || int(xi.size()) != m)
    throw std::invalid_argument("dcd_solve: shape mismatch");
  const int n = 2 * m;
  std::vector<double> A(std::size_t(n) * std::size_t(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double re = G[std::size_t(i)][std::size_t(j)].real();
      const double im = G[std::size_t(i)][std::size_t(j)].imag();
      A[std::size_t(i) * n + std::size_t(j)] = re;
      A[std::size_t(i) * n + std::size_t(j + m)] = -im;
      A[std::size_t(i + m) * n + std::size_t(j)] = im;
      A[std::size_t(i + m) * n + std::size_t(j + m)] = re;
    }
  }
  std::vector<double> r(std::size_t(n), 0.0), x(std::size_t(n), 0.0);
  for (int i = 0; i < m; ++i) {
    r[std::size_t(i)] = xi[std::size_t(i)].real();
    r[std::size_t(i + m)] = xi[std::size_t(i)].imag();
  }

  double dmax = 0.0, rmax = 0.0;
  for (int i = 0; i < n; ++i) {
    dmax = std::max(dmax, A[std::size_t(i) * n + std::size_t(i)]);
    rmax = std::max(rmax, std::abs(r[std::size_t(i)]));
  }
  DcdResult res;
  if (dmax <= 0.0) throw std::invalid_argument("dcd_solve: non-positive diagonal");
  if (rmax == 0.0) {
    res.solution.assign(std::size_t(m), cplx{});
    return res;
  }
  double step = std::exp2(std::ceil(std::log2(rmax / dmax)));
  int bits_used = 0;
  const int max_updates = cfg.updates_per_dim * m;
  bool exhausted_bits = false;

  while (res.updates < max_updates) {
    int p = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double v = std::abs(r[std::size_t(i)]) / A[std::size_t(i) * n + std::size_t(i)];
      if (v > best) {
        best = v;
        p = i;
      }
    }
    const double app = A[std::size_t(p) * n + std::size_t(p)];
    while (std::abs(r[std::size_t(p)]) <= 0.5 * step * app) {
      step *= 0.5;
      ++bits_used;
      if (bits_used >= cfg.step_bits) {
        exhausted_bits = true;
        break;
      }
    }
    if (exhausted_bits) break;
    const double s = r[std::size_t(p)] > 0.0 ? step : -step;
    x[std::size_t(p)] += s;
    for (int i = 0; i < n; ++i) r[std::size_t(i)] -= s * A[std::size_t(i) * n + std::size_t(p)];
    ++res.updates;
  }

  res.converged = exhausted_bits;  // step quantization reached, not budget
  res.solution.resize(std::size_t(m));
  for (int i = 0; i < m; ++i)
    res.solution[std::size_t(i)] = {x[std::size_t(i)], x[std::size_t(i + m)]};
  return res;
}

}  // namespace uwam
