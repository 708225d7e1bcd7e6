#pragma once

#include <cstddef>
#include <functional>

namespace selfstab {

/// Runs fn(i) for i in [0,n) across hardware threads.  Indices are
/// independent work items; callers make determinism their own concern by
/// writing to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace selfstab
