#pragma once

#include <cstddef>
#include <functional>

namespace garbe {

// Worker cap: GARBE_MAX_THREADS if set, else the hardware concurrency.
std::size_t max_threads();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunks write
// disjoint outputs, so results do not depend on the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace garbe
