#ifndef MAPT_PARALLEL_HPP
#define MAPT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mapt {

/// Worker-pool size: MAPT_THREADS when set to a positive integer (capped at
/// the hardware concurrency), otherwise the hardware concurrency.
std::size_t worker_count();

/// Runs body(0..n-1) on up to worker_count() threads. Each index runs
/// exactly once; the first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mapt

#endif  // MAPT_PARALLEL_HPP
