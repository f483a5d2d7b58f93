#pragma once

#include <cstddef>
#include <functional>

namespace hsf {

/// Worker count: HSF_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls fn(i) for i in [0, n) across up to thread_count() threads. Each
/// index runs exactly once; results must be written to per-index slots so
/// the outcome does not depend on scheduling. The first exception thrown by
/// any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hsf
