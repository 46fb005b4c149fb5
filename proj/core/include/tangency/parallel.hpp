#pragma once

#include <cstddef>
#include <functional>

namespace tangency {

// Worker count: TANGENCY_CHARGE_THREADS when set to a positive integer,
// otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, n) across worker_count() threads. Callers write
// results into per-index slots, so output never depends on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tangency
