#pragma once

#include <cstddef>
#include <functional>

namespace extremal {

// Parallelism cap, read once from EXTREMAL_DOMAINS_THREADS (falls back to
// hardware concurrency). Always >= 1.
int max_threads();

// Runs fn(i) for i in [0, n). Splits into contiguous chunks over at most
// max_threads() workers; results must be written to preallocated slots so the
// outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace extremal
