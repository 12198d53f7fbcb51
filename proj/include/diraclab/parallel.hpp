#pragma once

#include <functional>

namespace diraclab::numerics {

// Worker count: hardware concurrency, capped by DIRACLAB_THREADS if set.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots;
// the first exception (by index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace diraclab::numerics
