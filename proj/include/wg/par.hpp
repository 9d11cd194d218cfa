#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace wg {

// Global worker cap (CLI --threads).  Results are bit-reproducible regardless
// of the cap because reductions always combine a fixed block decomposition in
// a fixed order.
inline std::atomic<int>& thread_cap() {
  static std::atomic<int> cap{0};  // 0 = hardware concurrency
  return cap;
}

inline int effective_threads() {
  const int cap = thread_cap().load();
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int base = hw > 0 ? hw : 1;
  return cap > 0 ? std::min(cap, base) : base;
}

// Runs fn(block, lo, hi) over a fixed decomposition of [0,n) into n_blocks
// contiguous blocks.  Blocks may run concurrently; callers accumulate into
// per-block slots and combine serially afterwards.
inline void parallel_for_blocks(
    std::size_t n, std::size_t n_blocks,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  if (n_blocks == 0) n_blocks = 1;
  const int workers = effective_threads();
  if (workers <= 1 || n_blocks == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      const std::size_t lo = n * b / n_blocks;
      const std::size_t hi = n * (b + 1) / n_blocks;
      if (lo < hi) fn(b, lo, hi);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      const std::size_t lo = n * b / n_blocks;
      const std::size_t hi = n * (b + 1) / n_blocks;
      if (lo < hi) fn(b, lo, hi);
    }
  };
  std::vector<std::future<void>> fs;
  for (int w = 0; w < workers - 1; ++w)
    fs.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : fs) f.get();
}

}  // namespace wg
