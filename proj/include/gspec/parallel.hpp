#pragma once

#include <functional>

namespace gspec {

/// Effective worker count: hardware concurrency, capped by the
/// GROUNDED_SPECTRA_THREADS environment variable when set.
int worker_count();

/// Runs fn(i) for i in [0, count) across workers. Results must be written
/// to per-index slots by the caller; reduction order is then fixed by
/// iterating indices, independent of the thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

/// Splits [0, count) into one contiguous range per worker and runs
/// fn(begin, end) on each. Lets callers keep sweep-local state (e.g. warm
/// starts) without cross-thread sharing.
void parallel_chunks(int count, const std::function<void(int, int)>& fn);

} // namespace gspec
