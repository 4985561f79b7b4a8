#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace hyperradial {

/// Worker cap: HYPERRADIAL_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
[[nodiscard]] unsigned max_threads();

/// Runs task(i) for i in [0, count) on up to max_threads() threads. After all
/// workers join, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

} // namespace hyperradial
