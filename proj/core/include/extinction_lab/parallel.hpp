#pragma once

#include <cstddef>
#include <functional>

namespace extinction_lab {

/// Worker count for Monte Carlo batches: EXTINCTION_LAB_THREADS when set to
/// a positive integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// An explicit request capped by EXTINCTION_LAB_THREADS; 0 defers to
/// worker_count().
unsigned resolve_workers(unsigned requested);

/// Runs body(i) for i in [0, n) on up to `workers` threads (0 means
/// worker_count()). Indices are handed out dynamically; the body must only
/// write to state owned by its index. The first exception thrown by a body
/// is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace extinction_lab
