#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace uwam {

using cplx = std::complex<double>;

namespace detail {

inline const std::vector<cplx>& fft_twiddles(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::vector<cplx>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> w(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double a = -2.0 * std::numbers::pi * double(k) / double(n);
    w[k] = {std::cos(a), std::sin(a)};
  }
  return cache.emplace(n, std::move(w)).first->second;
}

}  // namespace detail

// In-place radix-2 transform. Forward is unnormalized, inverse carries 1/N,
// so ifft(fft(x)) == x.
inline void fft_inplace(std::vector<cplx>& x, bool inverse = false) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  const auto& w = detail::fft_twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx tw = w[k * step];
        if (inverse) tw = std::conj(tw);
        cplx u = x[i + k];
        cplx v = x[i + k + len / 2] * tw;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / double(n);
    for (auto& v : x) v *= inv;
  }
}

inline std::vector<cplx> fft(std::vector<cplx> x) {
  fft_inplace(x);
  return x;
}

inline std::vector<cplx> ifft(std::vector<cplx> x) {
  fft_inplace(x, true);
  return x;
}

}  // namespace uwam
