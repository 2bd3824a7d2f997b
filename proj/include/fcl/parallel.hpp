#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace fcl {

inline int worker_count(int requested, int jobs) {
  int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(w, jobs));
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. fn must only
// write to per-index storage; callers merge afterwards in index order.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  const int workers = worker_count(threads, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace fcl
