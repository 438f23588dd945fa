#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace commcent::detail {

// Splits [0, n) into a fixed number of contiguous blocks that does not depend
// on the thread count, so per-block partial results reduced in block order
// give bit-identical sums on any machine.
inline std::size_t block_count(std::size_t n, std::size_t max_blocks = 64) {
  return std::max<std::size_t>(1, std::min(n, max_blocks));
}

template <class Body>
void for_each_block(std::size_t n, std::size_t blocks, Body&& body) {
  const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t begin = n * static_cast<std::size_t>(b) / blocks;
    const std::size_t end = n * static_cast<std::size_t>(b + 1) / blocks;
    body(static_cast<std::size_t>(b), begin, end);
  }
}

}  // namespace commcent::detail
