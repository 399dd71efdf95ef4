#pragma once

#include <cstdint>
#include <functional>

namespace greedyrb {

// Global worker cap shared by every parallel loop in the library.
// Resolution order: set_max_threads() > GREEDY_RB_THREADS > hardware.
int max_threads();
void set_max_threads(int n);

// Chunked index-space map. Each index is processed exactly once and all
// writes are per-index, so results do not depend on the thread count.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace greedyrb
