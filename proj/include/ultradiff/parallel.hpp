#pragma once

#include <cstddef>
#include <functional>

namespace ultradiff {

// Worker count: ULTRADIFF_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Results must
// be written to per-index slots so the outcome does not depend on scheduling.
// If any call throws, the exception of the smallest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace ultradiff
