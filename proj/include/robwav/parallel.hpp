// Deterministic fan-out over independent tasks.
#pragma once

#include <cstddef>
#include <functional>

namespace robwav {

/// Worker count: `requested` when positive, otherwise ROBWAV_THREADS when set
/// to a positive value, otherwise the hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

/// Runs task(i) for i in [0, count) on up to `threads` workers. Each index
/// runs exactly once; results must be written to per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace robwav
