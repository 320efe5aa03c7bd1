#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "uwam/prng.hpp"

namespace uwam {

// User-specific random interleaver: Fisher-Yates permutation seeded by
// master_seed ^ user id.
inline std::vector<int> interleaver_permutation(int n, std::uint64_t master_seed,
                                                int user) {
  return random_permutation(n, master_seed ^ std::uint64_t(std::uint32_t(user)));
}

template <typename T>
std::vector<T> interleave(const std::vector<T>& x, const std::vector<int>& perm) {
  if (x.size() != perm.size())
    throw std::invalid_argument("interleave: length mismatch");
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[std::size_t(perm[i])];
  return out;
}

template <typename T>
std::vector<T> deinterleave(const std::vector<T>& x, const std::vector<int>& perm) {
  if (x.size() != perm.size())
    throw std::invalid_argument("deinterleave: length mismatch");
  std::vector<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[std::size_t(perm[i])] = x[i];
  return out;
}

}  // namespace uwam
