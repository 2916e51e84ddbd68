#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oac/rational.hpp"

namespace oac {

/// `count` equally spaced rationals from lo to hi inclusive (count >= 2).
std::vector<Rational> uniform_grid(std::size_t count, const Rational& lo, const Rational& hi);

/// uniform_grid(count, -10, 10) plus a few fixed probe points (±1/1000,
/// ±1/3, ±100) that are not on the uniform lattice.
std::vector<Rational> sampling_grid(std::size_t count = 201);

/// Enumeration guards and the sampling grid shared by every check.
struct Config {
  std::size_t support_cap = 20;
  std::size_t full_mode_cap = 6;
  std::size_t partition_cap = 6;
  std::vector<Rational> grid = sampling_grid();
  std::uint64_t seed = 20190601;
};

}  // namespace oac
