#include "mapt/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mapt {

std::size_t worker_count() {
  const std::size_t hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MAPT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return std::min(static_cast<std::size_t>(v), hw);
    } catch (const std::exception&) {
      // unparsable: ignore
    }
  }
  return hw;
}

namespace {
// Nested parallel_for calls from inside a worker run inline.
thread_local bool in_worker = false;
}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = in_worker ? 1 : std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    const bool was_worker = in_worker;
    in_worker = true;
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
    in_worker = was_worker;
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mapt
