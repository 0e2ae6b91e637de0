#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace raqr {

// Runs fn(i) for i in [0, n). Workers claim indices from a shared counter;
// callers must write results into pre-sized storage by index so the thread
// count never changes the output. threads <= 0 uses the hardware count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         int threads = 0) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nth = threads > 0 ? static_cast<std::size_t>(threads) : (hw ? hw : 1);
  if (nth > n) nth = n;
  if (nth <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(nth);
  for (std::size_t t = 0; t < nth; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load() && err) std::rethrow_exception(err);
}

} // namespace raqr
