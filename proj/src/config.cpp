#include "oac/config.hpp"

#include <algorithm>

#include "oac/error.hpp"

namespace oac {

std::vector<Rational> uniform_grid(std::size_t count, const Rational& lo, const Rational& hi) {
  if (count < 2) throw StructuralError("a grid needs at least two points");
  if (!(lo < hi)) throw StructuralError("grid bounds must satisfy lo < hi");
  std::vector<Rational> grid;
  grid.reserve(count);
  const Rational step = (hi - lo) / Rational(static_cast<long>(count - 1));
  for (std::size_t i = 0; i < count; ++i) grid.push_back(lo + step * Rational(static_cast<long>(i)));
  return grid;
}

std::vector<Rational> sampling_grid(std::size_t count) {
  auto grid = uniform_grid(count, -10, 10);
  for (const Rational& extra : {Rational(1, 1000), Rational(1, 3), Rational(100)}) {
    for (const Rational& q : {extra, Rational(-extra)})
      if (std::find(grid.begin(), grid.end(), q) == grid.end()) grid.push_back(q);
  }
  return grid;
}

}  // namespace oac
