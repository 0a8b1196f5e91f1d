// Deterministic parallel loop over independent trials.
#pragma once

#include <functional>

namespace gmdet {

/// Worker count: GMDET_THREADS when set, hardware concurrency otherwise.
int worker_count();

/**
 * Run fn over [0, count) split into contiguous blocks, one per worker.
 * Each index must write only its own outputs; results are then identical
 * for any worker count.
 */
void parallel_for(long count, const std::function<void(long, long)>& fn);

} // namespace gmdet
