#pragma once

#include <functional>

namespace cohsr {

/// Worker count used by data-parallel loops. Defaults to 1, which keeps every
/// result bit-reproducible; loops only ever split work into disjoint outputs,
/// so larger counts change timing but not values.
void set_thread_count(int threads);
int thread_count() noexcept;

/// Calls body(i) for every i in [begin, end), split into contiguous chunks.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace cohsr
