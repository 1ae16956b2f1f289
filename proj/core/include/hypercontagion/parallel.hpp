#pragma once

#include <cstddef>
#include <functional>

namespace hc {

/// Requested <= 0 means "use available hardware parallelism".
int resolve_threads(int requested);

/// Runs fn(0..count-1) on up to `threads` workers. Results must be written to
/// per-index slots so the outcome is independent of scheduling order. The
/// first exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace hc
