#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "oac/suites.hpp"

namespace oac {

inline void PrintTo(const Element& x, std::ostream* os) { *os << to_string(x); }

}  // namespace oac

namespace oac::test {

inline Rational q(const char* text) { return parse_rational(text); }

inline Element vec(const SpacePtr& space, std::initializer_list<const char*> values) {
  std::vector<Rational> v;
  for (const char* s : values) v.push_back(parse_rational(s));
  return Element(space, std::move(v));
}

inline KernelOperator kernel_op(const SpacePtr& source, const SpacePtr& target,
                                std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<Expr> k;
  for (const auto& row : rows)
    for (const char* e : row) k.push_back(parse_expr(e));
  return KernelOperator(source, target, std::move(k));
}

inline KernelOperator diag(const SpacePtr& space, std::initializer_list<const char*> entries) {
  std::vector<Expr> d;
  for (const char* e : entries) d.push_back(parse_expr(e));
  return KernelOperator::diagonal(space, std::move(d));
}

inline BooleanHom hom(const SpacePtr& source, const SpacePtr& target, std::vector<std::size_t> map) {
  return BooleanHom(source, target, std::move(map));
}

}  // namespace oac::test
