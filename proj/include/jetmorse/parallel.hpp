#pragma once

#include <cstddef>
#include <functional>

namespace jetmorse {

/// Worker count from JETMORSE_THREADS, else hardware concurrency (at least 1).
unsigned default_workers();

/// Runs body(i) for every i in [0, count) on up to `workers` threads. Each
/// index is visited exactly once; callers write results into per-index slots
/// so the outcome is independent of scheduling. The first exception thrown
/// by any body is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace jetmorse
