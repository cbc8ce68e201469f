#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cfgbounds::parallel {

/// Worker count for OpenMP regions. Reads CONFIGBOUNDS_THREADS on every call
/// (so tests can vary it at runtime); falls back to the OpenMP default.
int thread_count();

/// Fixed reduction block. Partial sums are formed per block and then added
/// in block order, so results do not depend on the number of workers.
inline constexpr std::size_t kReduceBlock = 4096;

/// Sums `values` block-by-block in index order (the aggregation used by every
/// parallel kernel in this library).
double blocked_sum(const std::vector<double>& block_partials);

}  // namespace cfgbounds::parallel
