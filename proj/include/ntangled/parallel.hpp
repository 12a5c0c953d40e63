#pragma once

#include <cstddef>
#include <functional>

namespace ntangled {

/// Caps the worker count used by parallel_for. 0 restores the default
/// (NTANGLED_THREADS env var if set, otherwise hardware concurrency).
void set_max_threads(int threads);
int max_threads();

/// Runs fn(i) for every i in [0, count), split into contiguous chunks across
/// workers. fn must only touch per-index state; callers do any reduction
/// afterwards in index order, so results never depend on the thread count.
/// Calls nested inside a parallel_for run inline on the calling thread.
void parallel_for(size_t count, const std::function<void(size_t)>& fn);

} // namespace ntangled
