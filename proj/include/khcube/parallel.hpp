#pragma once

#include <cstddef>
#include <functional>

namespace khcube {

// Worker count: KH_THREADS if set, else hardware concurrency.
int thread_count();

// Runs f(i) for i in [0, n); each index exactly once, in no particular order.
void parallel_for(size_t n, const std::function<void(size_t)>& f);

}  // namespace khcube
