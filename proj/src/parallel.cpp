#include "ergodamp/parallel.hpp"

#include <atomic>

namespace ergodamp {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int threads) { g_threads = threads < 0 ? 1 : threads; }

int thread_count() {
  const int t = g_threads.load();
  if (t == 0) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return t;
}

}  // namespace ergodamp
