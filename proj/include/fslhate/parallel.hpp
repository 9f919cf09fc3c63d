#pragma once

#include <cstddef>
#include <functional>

namespace fslhate {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. fn must only
/// touch state owned by its own i (results slots, per-i rngs). Runs inline
/// when workers <= 1. The first exception thrown by any worker is rethrown
/// on the calling thread after all workers join.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fslhate
