#ifndef POLIS_PARALLEL_HPP
#define POLIS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace polis {

// Worker cap: POLIS_THREADS when set (minimum 1), otherwise the hardware
// concurrency.
std::size_t max_threads();

// Runs body(0..count-1). With parallel=false, or a single worker, this is a
// plain loop. Bodies must write only to their own index's slot; the first
// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, bool parallel,
                  const std::function<void(std::size_t)>& body);

}  // namespace polis

#endif  // POLIS_PARALLEL_HPP
