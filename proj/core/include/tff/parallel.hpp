#pragma once

#include <cstddef>
#include <functional>

namespace tff {

// 0 or negative means hardware concurrency.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n) on up to `threads` workers with an index-based
// static partition. Each index is run exactly once; results must be written
// to per-index slots so the output does not depend on the worker count.
// The exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace tff
