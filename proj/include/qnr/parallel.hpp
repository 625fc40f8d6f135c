#pragma once

#include <cstddef>
#include <functional>

namespace qnr {

/// Worker count: hardware concurrency, optionally capped by the
/// RADIUS_THREADS environment variable.
int default_thread_count();

/// Runs fn(0..count-1) across workers. Callers own determinism by indexing
/// results; completion order is unspecified. threads <= 0 picks the default.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

}  // namespace qnr
