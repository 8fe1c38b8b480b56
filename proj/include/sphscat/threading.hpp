#pragma once

#include <cstddef>
#include <functional>

namespace sphscat {

// Global worker cap for parallel_for; 0 restores the hardware default.
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [0, n). Work items must write to disjoint slots so the
// result is identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sphscat
