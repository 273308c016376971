#pragma once

#include <cstddef>
#include <functional>

namespace fusegraph {

/// Worker count from FUSEGRAPH_THREADS, else the hardware concurrency.
std::size_t default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; results written to per-index slots are therefore
/// schedule-independent. The first exception thrown by any worker is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace fusegraph
