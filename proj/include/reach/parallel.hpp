#pragma once

#include <cstddef>
#include <functional>

namespace reach {

// Worker count: REACH_THREADS when set (>= 1), else hardware concurrency.
std::size_t worker_count();

// Calls body(begin, end) on disjoint chunks covering [0, n). Chunks run on
// up to worker_count() threads; with one worker everything runs inline.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace reach
