#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ecdim {

// Thread budget for internal parallelism, capped by the ECDIM_THREADS
// environment variable (>= 1).
inline unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ECDIM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = std::min<long>(v, 256);
  }
  return hw;
}

// Runs fn(i) for i in [0, n). Results must be written to index-addressed
// slots by the caller so the outcome is independent of scheduling. The first
// worker exception (lowest chunk) is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::uint64_t n, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = thread_budget();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n ? n : 1));
  if (threads <= 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (n + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &fn, &errors] {
      try {
        for (std::uint64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ecdim
