#pragma once

#include <cstddef>
#include <functional>

namespace spinlink {

// Worker count: SPINLINK_THREADS if set and positive, else the hardware
// concurrency (at least 1).
int default_thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = default).
// Work is split into contiguous chunks, so results written to slot i do not
// depend on the thread count. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace spinlink
