#pragma once

#include <cstddef>
#include <functional>

namespace prandtl {

/// Worker cap: PRANDTL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Override the cap for the current process (0 restores the environment value).
void set_thread_count(int n);

/// Runs body(k) for k in [begin, end) split into contiguous chunks across at
/// most thread_count() threads.  Iterations must be independent; results are
/// then identical for any thread count.  The exception thrown by the lowest
/// failing chunk is rethrown on the caller.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace prandtl
