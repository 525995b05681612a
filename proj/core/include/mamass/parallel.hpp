#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mamass {

// Worker count: hardware concurrency, capped by MAMASS_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, count). Work is split into contiguous chunks; each
// index is visited exactly once, so results written per index are independent
// of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation in a fixed order.
double pairwise_sum(std::span<const double> xs);

}  // namespace mamass
