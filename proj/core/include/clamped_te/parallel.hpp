#pragma once

#include <cstddef>
#include <functional>

namespace clamped_te {

/// Caps the worker pool used by parallel loops; 0 restores the default
/// (std::thread::hardware_concurrency).
void set_max_threads(unsigned count);
unsigned max_threads();

/// Runs body(i) for i in [0, count). Iterations must write to disjoint
/// state; the first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace clamped_te
