#pragma once

#include <cstddef>
#include <functional>

namespace mhq {

/// Worker count from MHQ_THREADS, defaulting to the hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n) across `threads` workers. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body, unsigned threads = thread_count());

}  // namespace mhq
