#ifndef DSR_THREADING_HPP
#define DSR_THREADING_HPP

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dsr {

/// Worker count: DSRLAB_THREADS when set (>= 1), else hardware concurrency.
inline int thread_count() {
  static const int count = [] {
    if (const char* env = std::getenv("DSRLAB_THREADS")) {
      const int parsed = std::atoi(env);
      if (parsed >= 1) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return count;
}

/// Runs body(i) for i in [0, n) on blocked index ranges. Each index is
/// visited exactly once and results must be written to disjoint slots, so
/// outputs do not depend on the worker count. body must not throw.
template <class Body>
void parallel_for(int n, Body&& body) {
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (int i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dsr

#endif  // DSR_THREADING_HPP
