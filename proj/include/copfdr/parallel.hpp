#pragma once

#include <cstddef>
#include <functional>

namespace copfdr {

/// Worker count: COPFDR_THREADS if set and positive, otherwise
/// std::thread::hardware_concurrency() (0 means auto).
std::size_t worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, count), possibly on
/// several threads. Callers write results by index, so the outcome does not
/// depend on scheduling. Exceptions from workers are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace copfdr
