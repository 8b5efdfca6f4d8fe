// Static-partition parallel loop. Work items are assigned to workers by
// index, so results written to index-addressed slots are identical for any
// worker count.
#pragma once

#include <cstdint>
#include <functional>

namespace qrep {

// Runs fn(i) for i in [0, count). threads <= 1 runs inline; threads == 0
// uses the hardware concurrency.
void parallel_for_static(std::int64_t count, int threads,
                         const std::function<void(std::int64_t)>& fn);

int resolve_thread_count(int requested);

}  // namespace qrep
