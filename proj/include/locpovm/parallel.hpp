#pragma once

#include <functional>

namespace locpovm {

// Runs fn(i) for i in [0, n).  Worker count is capped by the LOCPOVM_THREADS
// environment variable (default: hardware concurrency).  Callers write
// results into pre-sized slots indexed by i, so output order, and therefore
// serialized output, is independent of the worker count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace locpovm
