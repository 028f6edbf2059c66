#pragma once

#include <cstddef>
#include <functional>

namespace epm {

// Worker count, resolved once: EPM_THREADS if set, else hardware concurrency.
int thread_count();

// Runs fn(begin, end) over [0, n) split into fixed-size chunks on a shared
// pool. Chunk boundaries do not depend on the thread count, so reductions
// combined in chunk order are reproducible under any EPM_THREADS.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

constexpr std::size_t kParallelChunk = 1024;

inline std::size_t chunk_count(std::size_t n) { return (n + kParallelChunk - 1) / kParallelChunk; }

}  // namespace epm
