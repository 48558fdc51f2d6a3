#ifndef FRACDISP_THREADING_HPP
#define FRACDISP_THREADING_HPP

#include <cstddef>
#include <functional>

namespace fracdisp {

// Worker cap: min(hardware_concurrency, FRACDISP_THREADS if set).
std::size_t thread_budget();

// Runs fn(i) for i in [0, n). Deterministic partitioning: worker w owns the
// contiguous block of indices [w*n/W, (w+1)*n/W), so results are identical
// for every thread count as long as iterations are independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace fracdisp

#endif
