#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ergodamp {

/// Worker count used by parallel_for; 1 by default, 0 means hardware concurrency.
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [0, count) over contiguous chunks. Each index is
/// processed exactly once, so results that depend on one index only are
/// independent of the thread count. The first exception is rethrown.
template <class Body>
void parallel_for(size_t count, Body&& body) {
  const size_t workers = std::min<size_t>(static_cast<size_t>(thread_count()), count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
      const size_t lo = count * w / workers;
      const size_t hi = count * (w + 1) / workers;
      pool.emplace_back([&, lo, hi] {
        try {
          for (size_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ergodamp
