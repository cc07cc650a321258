#pragma once

#include <cstddef>
#include <functional>

namespace polyharm {

/// Worker count: POLYHARM_THREADS when set and positive, else hardware
/// concurrency (at least one).
unsigned thread_count();

/// Calls fn(i) for i in [0, count) across thread_count() workers. Each index
/// is visited exactly once; callers write to per-index slots and reduce in
/// index order afterwards, so results do not depend on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace polyharm
