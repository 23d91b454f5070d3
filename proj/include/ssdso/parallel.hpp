#pragma once

#include <cstddef>
#include <functional>

namespace ssdso {

/// Worker count: SSDSO_THREADS if set (>= 1), else hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() threads.
/// Bodies must write only to slots owned by their index. The first exception
/// thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ssdso
