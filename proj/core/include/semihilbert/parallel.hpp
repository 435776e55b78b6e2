#pragma once

#include <cstddef>
#include <functional>

namespace semihilbert {

/// Worker cap honoring the SEMIHILBERT_THREADS environment variable.
std::size_t thread_cap();

/// Runs fn(i) for i in [0, count) on up to thread_cap() workers. Tasks
/// write to disjoint slots, so results are deterministic regardless of
/// the schedule. The first exception, if any, is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace semihilbert
