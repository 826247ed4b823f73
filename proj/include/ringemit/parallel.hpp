#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace ringemit {

// Static block split over hardware threads; f(i) must touch only index i of
// any shared output, which keeps results independent of the thread count.
template <class F>
void parallel_for(std::size_t count, F&& f) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t n_threads = std::min<std::size_t>(hw, count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::size_t chunk = (count + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ringemit
