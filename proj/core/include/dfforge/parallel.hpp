#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace dfforge {

/// Worker count used by parallel scans (defaults to the hardware concurrency).
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Work is split into
/// contiguous index blocks; callers write results into index-addressed slots, so output
/// never depends on the schedule. The first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dfforge
