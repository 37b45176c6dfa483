#pragma once

#include <cstddef>
#include <functional>

namespace gameqd {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Callers write results
// into pre-sized slots indexed by i, so output never depends on scheduling.
// The first exception thrown by fn is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace gameqd
