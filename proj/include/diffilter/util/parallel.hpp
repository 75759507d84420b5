#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace diffilter {

// Run fn(i) for i in [0, n) across up to n_threads workers. Work is split by
// index stride so results never depend on scheduling; exceptions propagate.
inline void parallel_for(long n, const std::function<void(long)>& fn, int n_threads = 0) {
  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (n <= 1 || n_threads == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<long>(n_threads, n));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (long i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace diffilter
