#pragma once

#include <cstddef>
#include <functional>

namespace heatbind {

/// Worker cap: HEATBIND_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least one).
std::size_t thread_cap();

/// Calls body(i) for i in [0, count) on up to thread_cap() threads. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace heatbind
