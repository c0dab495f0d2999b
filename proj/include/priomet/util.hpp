#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace priomet {

/// Runs fn(i) for i in [0, count) across up to max_threads workers.
/// Work is split into contiguous ranges; results must be written to
/// per-index slots so the outcome is independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned max_threads = 0) {
  if (count == 0) return;
  unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
  if (hw <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// FNV-1a 64-bit digest, hex-encoded; used for run-manifest content digests.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace priomet
