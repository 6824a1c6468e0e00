#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rtreg {

// Runs every task exactly once across at most n_jobs worker threads. The
// first exception thrown by any task is rethrown on the calling thread after
// all workers have joined; remaining tasks still run.
inline void run_parallel(const std::vector<std::function<void()>>& tasks, int n_jobs) {
  if (n_jobs < 1) n_jobs = 1;
  const std::size_t count = tasks.size();
  if (count == 0) return;
  if (n_jobs == 1 || count == 1) {
    for (const auto& task : tasks) task();
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        tasks[i]();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(n_jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rtreg
