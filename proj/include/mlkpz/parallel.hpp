#pragma once

#include <cstddef>
#include <functional>

namespace mlkpz {

/// Worker count: MLKPZ_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(index, worker) for index in [0, count) on worker_count() threads.
/// Indices are handed out dynamically; `worker` is in [0, workers) and lets the
/// caller keep per-worker accumulators. Exceptions are rethrown after join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t index, std::size_t worker)>& body);

}  // namespace mlkpz
