#pragma once

#include <cstddef>
#include <functional>

namespace lpbm {

// Thread count from LPBM_THREADS, else the hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n) over static contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lpbm
