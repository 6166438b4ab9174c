// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include "qspec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qspec {
namespace {
std::atomic<std::size_t> g_max_threads{0};
// Nested parallel_for calls run inline on the calling worker.
thread_local bool t_in_parallel = false;

struct RegionGuard {
  bool previous = t_in_parallel;
  RegionGuard() { t_in_parallel = true; }
  ~RegionGuard() { t_in_parallel = previous; }
};
}

void set_max_threads(std::size_t threads) noexcept { g_max_threads.store(threads); }

std::size_t max_threads() noexcept {
  const std::size_t cap = g_max_threads.load();
  if (cap != 0) return cap;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = t_in_parallel ? 1 : std::min(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    const RegionGuard guard;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace qspec
