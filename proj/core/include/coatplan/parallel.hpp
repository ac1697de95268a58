#pragma once

#include <cstdint>
#include <functional>

namespace coatplan {

/// Worker count for a request; <= 0 means hardware concurrency.
int effective_threads(int requested);

/// Runs body(i) for i in [0, n) on a static block partition.
///
/// Bodies must only write to their own index slots; under that contract
/// results are identical for every thread count, which is the
/// reproducibility guarantee the samplers and planners rely on.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t)>& body);

}  // namespace coatplan
