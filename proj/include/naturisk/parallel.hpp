#pragma once

#include <cstddef>
#include <functional>

namespace naturisk {

// Worker count: NATURISK_THREADS when set (>= 1), else hardware concurrency.
std::size_t worker_count();

// Runs fn(0..n-1) on up to worker_count() threads. Items are statically
// partitioned and must write to disjoint state, so results never depend on
// the thread count. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace naturisk
