#pragma once

#include <cstddef>
#include <functional>

namespace hyperwave::parallel {

/// Worker count: hardware concurrency capped by the HYPERWAVE_THREADS
/// environment variable (values < 1 mean 1).
std::size_t thread_budget();

/// Run fn(i) for i in [0, count). Work is split in contiguous blocks over
/// thread_budget() threads; callers write results into preallocated slots
/// indexed by i, so output is deterministic regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hyperwave::parallel
