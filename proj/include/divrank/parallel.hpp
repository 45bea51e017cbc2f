#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace divrank {
namespace detail {

/// Worker count: DIVRANK_THREADS caps it, hardware concurrency otherwise.
inline int thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("DIVRANK_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < 1024) return static_cast<int>(std::min<long>(v, hw * 4));
  }
  return static_cast<int>(hw);
}

/// Index-sharded parallel loop. The worker fn must only write to its own
/// index's slot; results are then deterministic regardless of scheduling.
template <class Fn>
void parallel_for(long long count, Fn&& fn) {
  int workers = thread_count();
  if (workers <= 1 || count <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    while (true) {
      long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail
}  // namespace divrank
