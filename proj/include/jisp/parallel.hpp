// Minimal data-parallel loop helper.
#pragma once

#include <cstddef>
#include <functional>

namespace jisp {

/// Worker count: hardware concurrency, capped by the JACOBI_ISP_THREADS
/// environment variable (0 or unset = auto).
unsigned worker_threads();

/// Runs fn(i) for i in [0, n), split across worker_threads() threads.
/// Determinism is the caller's contract: each index writes only its own
/// output slots.  Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace jisp
