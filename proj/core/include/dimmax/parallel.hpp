#pragma once

#include <cstddef>
#include <functional>

namespace dimmax {

// Worker cap: DIMMAX_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads. Each
// index runs exactly once; callers write results to slot i and combine them
// in index order afterwards so totals do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace dimmax
