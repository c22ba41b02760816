#pragma once

#include <cstddef>
#include <functional>

namespace photonlab {

/// Worker count from PHOTONLAB_THREADS, else hardware concurrency (>= 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers in contiguous
/// blocks. Each index is written by exactly one worker, so results do not
/// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace photonlab
