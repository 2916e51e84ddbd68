#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oac {

/// Blocks of a partition of {0, ..., n-1}; blocks ordered by least element.
using SetPartition = std::vector<std::vector<std::size_t>>;

/// Every set partition of {0, ..., n-1}, generated from restricted growth
/// strings in lexicographic order. The first is the one-block partition, the
/// last the all-singletons partition.
std::vector<SetPartition> set_partitions(std::size_t n);

/// Bell numbers via the Bell triangle; exact for n <= 25.
std::uint64_t bell_number(std::size_t n);

}  // namespace oac
