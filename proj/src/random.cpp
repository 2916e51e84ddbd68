#include "oac/random.hpp"

#include <algorithm>
#include <numeric>

namespace oac {

std::size_t Sampler::index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

bool Sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Rational Sampler::rational(int max_num, int max_den) {
  const long num = std::uniform_int_distribution<long>(-max_num, max_num)(rng_);
  const long den = std::uniform_int_distribution<long>(1, max_den)(rng_);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Sampler::nonzero_rational(int max_num, int max_den) {
  for (;;) {
    Rational q = rational(max_num, max_den);
    if (q != 0) return q;
  }
}

Element Sampler::element(const SpacePtr& space, double zero_prob) {
  std::vector<Rational> v(space->size());
  for (auto& q : v) q = coin(zero_prob) ? Rational(0) : nonzero_rational();
  return Element(space, std::move(v));
}

Element Sampler::positive_element(const SpacePtr& space, double zero_prob) { return abs(element(space, zero_prob)); }

PointSet Sampler::subset(std::size_t universe) {
  PointSet s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (coin()) s.insert(i);
  return s;
}

std::pair<Element, Element> Sampler::disjoint_pair(const SpacePtr& space) {
  const Element w = element(space);
  const PointSet a = subset(space->size());
  return {w.restrict_to(a), w.restrict_to(a.complement())};
}

BooleanHom Sampler::hom(const SpacePtr& source, const SpacePtr& target) {
  std::vector<std::size_t> map(target->size());
  for (auto& s : map) s = index(source->size());
  return BooleanHom(source, target, std::move(map));
}

BooleanHom Sampler::bijection(const SpacePtr& source, const SpacePtr& target) {
  std::vector<std::size_t> map(target->size());
  std::iota(map.begin(), map.end(), std::size_t{0});
  std::shuffle(map.begin(), map.end(), rng_);
  return BooleanHom(source, target, std::move(map));
}

Expr Sampler::raw_expr(int depth) {
  if (depth <= 0 || coin(0.25)) {
    if (coin(0.6)) return Expr::var();
    return Expr::literal(rational(4, 3));
  }
  switch (index(10)) {
    case 0: return Expr::add(raw_expr(depth - 1), raw_expr(depth - 1));
    case 1: return Expr::sub(raw_expr(depth - 1), raw_expr(depth - 1));
    case 2: return Expr::mul(raw_expr(depth - 1), raw_expr(depth - 1));
    case 3: return Expr::negate(raw_expr(depth - 1));
    case 4: return Expr::abs(raw_expr(depth - 1));
    case 5: return Expr::min(raw_expr(depth - 1), raw_expr(depth - 1));
    case 6: return Expr::max(raw_expr(depth - 1), raw_expr(depth - 1));
    case 7: return Expr::pow(raw_expr(depth - 1), static_cast<unsigned>(index(3)));
    case 8: return Expr::div(raw_expr(depth - 1), Expr::literal(nonzero_rational(4, 3)));
    default:
      return Expr::ifzero(Expr::var(), Expr::literal(0),
                          Expr::div(Expr::literal(nonzero_rational(3, 2)), Expr::pow(Expr::var(), 1 + index(2))));
  }
}

Expr Sampler::kernel_expr(int depth, bool positive) {
  Expr e = raw_expr(depth);
  const Rational at_zero = eval(e, 0);
  if (at_zero != 0) e = Expr::sub(std::move(e), Expr::literal(at_zero));
  if (positive) {
    switch (index(3)) {
      case 0: return Expr::abs(std::move(e));
      case 1: return Expr::pow(std::move(e), 2);
      default: return Expr::max(std::move(e), Expr::literal(0));
    }
  }
  return e;
}

}  // namespace oac
