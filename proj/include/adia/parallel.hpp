#pragma once

#include <functional>

namespace adia {

// Worker count for sweep cells: ADIA_THREADS if set (>=1), otherwise
// hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n) on up to worker_count() threads. Callers keep
// determinism by writing results into per-index slots and reducing in index
// order afterwards. Exceptions from workers are rethrown on the calling
// thread.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace adia
