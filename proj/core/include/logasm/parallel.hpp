#pragma once

#include <cstddef>
#include <functional>

namespace logasm {

// Worker count: LOGASM_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, count). Each index is handled exactly once;
// callers write into per-index slots, so results do not depend on
// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace logasm
