#pragma once

// Brute-force references used by the test and acceptance suites. None of
// these share code paths with the library routines they check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dobinski/real.hpp"

namespace dobinski::oracle {

struct PartitionCounts {
  std::uint64_t total = 0;
  std::uint64_t singleton_free = 0;
  std::vector<std::uint64_t> by_blocks;  // index = number of blocks
};

/// Enumerates every set partition of {0..n-1} as a restricted growth
/// string a[0]=0, a[i] <= 1 + max(a[0..i-1]).
inline PartitionCounts enumerate_partitions(std::size_t n) {
  PartitionCounts counts;
  counts.by_blocks.assign(n + 1, 0);
  if (n == 0) {
    counts.total = 1;
    counts.singleton_free = 1;
    counts.by_blocks[0] = 1;
    return counts;
  }
  std::vector<std::size_t> a(n, 0), prefix_max(n, 0);
  std::vector<std::size_t> block_size(n + 1, 0);
  while (true) {
    std::size_t blocks = prefix_max[n - 1] + 1;
    std::fill(block_size.begin(), block_size.end(), 0);
    for (std::size_t v : a) ++block_size[v];
    bool singleton = false;
    for (std::size_t b = 0; b < blocks; ++b) singleton = singleton || block_size[b] == 1;
    ++counts.total;
    ++counts.by_blocks[blocks];
    if (!singleton) ++counts.singleton_free;

    // Next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return counts;
}

/// Plain floating summation sum_{k<terms} f(k) e^{-x} x^k / k! with the
/// Poisson weight advanced by one multiply and one divide per step.
template <typename F>
Real direct_poisson_sum(F&& f, const Real& x, std::size_t terms) {
  const long bits = x.bits();
  Real weight = exp(-x);
  Real sum(bits);
  for (std::size_t k = 0; k < terms; ++k) {
    sum += f(k) * weight;
    weight = weight * x / Real(static_cast<long>(k + 1), bits);
  }
  return sum;
}

}  // namespace dobinski::oracle
