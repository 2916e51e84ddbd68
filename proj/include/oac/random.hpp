#pragma once

// Seeded generators for elements, disjoint pairs, point maps and kernel
// expressions. Used by the sample-based checks and the property suites.

#include <cstdint>
#include <random>
#include <utility>

#include "oac/kernel_expr.hpp"
#include "oac/lattice.hpp"
#include "oac/projection.hpp"

namespace oac {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() noexcept { return rng_; }

  std::size_t index(std::size_t n);
  bool coin(double p = 0.5);

  /// p/q with |p| <= max_num, 1 <= q <= max_den.
  Rational rational(int max_num = 6, int max_den = 4);
  Rational nonzero_rational(int max_num = 6, int max_den = 4);

  Element element(const SpacePtr& space, double zero_prob = 0.25);
  Element positive_element(const SpacePtr& space, double zero_prob = 0.25);
  PointSet subset(std::size_t universe);
  /// Random w split along a random subset: (w|A, w|Aᶜ).
  std::pair<Element, Element> disjoint_pair(const SpacePtr& space);

  BooleanHom hom(const SpacePtr& source, const SpacePtr& target);
  BooleanHom bijection(const SpacePtr& source, const SpacePtr& target);

  /// Random total expression g with g(0) = 0 (divisions are by nonzero
  /// literals or guarded by ifzero(r, ...)). `positive` yields g >= 0.
  Expr kernel_expr(int depth = 2, bool positive = false);

 private:
  Expr raw_expr(int depth);

  std::mt19937_64 rng_;
};

}  // namespace oac
