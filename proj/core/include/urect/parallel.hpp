#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace urect {

/// Runs fn(i) for i in [0, n) over `degree` worker threads. Each worker owns a
/// contiguous index range, so any output written by index is independent of
/// the degree; reductions over the outputs must be done by the caller in index
/// order.
inline void parallel_for(std::size_t n, int degree, const std::function<void(std::size_t)>& fn) {
  if (degree <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(degree), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace urect
