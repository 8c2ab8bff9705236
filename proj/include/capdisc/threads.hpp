#pragma once

#include <functional>

namespace capdisc {

/// Worker cap for parallel kernels. 0 = hardware concurrency.
/// Initialized from the CAPDISC_THREADS environment variable when set.
void set_max_threads(int n);
int max_threads();

/// Runs fn(0) ... fn(n_tasks-1) on up to max_threads() workers.
/// Tasks must write to disjoint state; the caller owns any reduction, which
/// must be performed in task-index order to stay independent of thread count.
void parallel_for(int n_tasks, const std::function<void(int)>& fn);

}  // namespace capdisc
