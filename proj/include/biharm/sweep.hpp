#pragma once

// Bounded worker pool for independent sweep tasks. Results are stored by
// task index, so output order never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace biharm {

/// Worker count: BIHARM_LAB_WORKERS if set to a positive integer, otherwise the
/// hardware concurrency; never more than `tasks`, never less than 1.
inline unsigned worker_count(std::size_t tasks) {
  unsigned w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIHARM_LAB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) w = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // unparsable values fall back to the default
    }
  }
  if (tasks > 0) w = static_cast<unsigned>(std::min<std::size_t>(w, tasks));
  return std::max(1u, w);
}

/// out[i] = fn(i) for i < tasks. The first exception thrown by any task is
/// rethrown after all workers have stopped.
template <class R>
std::vector<R> parallel_map(std::size_t tasks, const std::function<R(std::size_t)>& fn, unsigned workers = 0) {
  std::vector<R> out(tasks);
  if (tasks == 0) return out;
  if (workers == 0) workers = worker_count(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto loop = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  if (workers == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace biharm
