#pragma once

#include <cstddef>
#include <functional>

namespace hexns {

// Worker count: hardware concurrency, capped by HEXNS_THREADS when set.
int worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads.
// Each index is visited exactly once; results must be written per index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hexns
