#pragma once

#include <cstddef>
#include <functional>

namespace shrinkage {

// Worker count: explicit argument if > 0, else the SHRINKAGE_THREADS
// environment variable, else hardware concurrency.
int resolve_thread_count(int requested = 0);

// Run fn(i) for i in [0, count) across a transient thread pool. Tasks own
// disjoint output slots indexed by i, so results are identical for any
// worker count. The first exception thrown by a task is rethrown here.
void parallel_for_indexed(std::size_t count,
                          const std::function<void(std::size_t)>& fn,
                          int threads = 0);

}  // namespace shrinkage
