#pragma once

#include <cstddef>
#include <functional>

namespace ldps {

/// Thread count resolution order: explicit value, LDPS_THREADS, hardware.
unsigned default_thread_count();

/// Runs `body(begin, end)` over a block partition of [0, n). Results must be
/// written to disjoint, index-addressed storage so the output does not depend
/// on the partition (all library call sites are row-partitioned).
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

} // namespace ldps
