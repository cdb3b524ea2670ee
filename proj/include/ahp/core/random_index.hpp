#pragma once

#include <cstddef>
#include <cstdint>

namespace ahp {

/// Monte Carlo random index: the mean CI of `samples` random reciprocal
/// matrices of the given order whose upper-triangle entries are drawn
/// uniformly from the 17-point Saaty scale.
///
/// The sample range is split into a fixed number of partitions, each with
/// its own generator derived from `seed`, so the result does not depend on
/// how many threads run the partitions. `threads` = 0 picks the hardware
/// concurrency.
double simulate_ri(std::size_t order, std::size_t samples, std::uint64_t seed,
                   unsigned threads = 0);

}  // namespace ahp
