#include "oac/superposition.hpp"

#include <algorithm>

#include "oac/error.hpp"
#include "oac/random.hpp"

namespace oac {

SuperpositionKernel::SuperpositionKernel(SpacePtr space, std::vector<Expr> per_point)
    : space_(std::move(space)), kernel_(std::move(per_point)) {
  if (!space_) throw StructuralError("superposition kernel without a space");
  if (kernel_.size() != space_->size()) throw StructuralError("superposition kernel needs one expression per point");
  for (std::size_t s = 0; s < kernel_.size(); ++s) {
    Rational at_zero;
    try {
      at_zero = eval(kernel_[s], 0);
    } catch (const EvalError& e) {
      throw StructuralError("N(" + space_->point(s) + ", 0) is undefined: " + e.what());
    }
    if (at_zero != 0) throw StructuralError("N(" + space_->point(s) + ", 0) = " + to_string(at_zero) + " != 0");
  }
}

Element superpose(const SuperpositionKernel& N, const Element& f) {
  require_same_space(N.space(), f.space(), "superposition");
  std::vector<Rational> out(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) out[s] = eval(N.at(s), f[s]);
  return Element(f.space(), std::move(out));
}

Element ShiftOperator::apply(const Element& f) const {
  require_same_space(hom_.source(), f.space(), "shift operator");
  std::vector<Rational> out(hom_.target()->size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = f[hom_(t)];
  return Element(hom_.target(), std::move(out));
}

Rational rho_metric(const Element& f, const Element& g) {
  require_same_space(f.space(), g.space(), "metric");
  Rational total;
  for (std::size_t s = 0; s < f.size(); ++s) {
    const Rational d = abs_value(f[s] - g[s]);
    total += f.space()->finite_weight(s) * d / (1 + d);
  }
  return total;
}

KernelOperator compose(const SuperpositionKernel& N, const ShiftOperator& S) {
  const BooleanHom& h = S.hom();
  require_same_space(N.space(), h.target(), "superposition after shift");
  const std::size_t m = h.target()->size();
  std::vector<Expr> kernel(h.source()->size() * m);
  for (std::size_t t = 0; t < m; ++t) kernel[h(t) * m + t] = N.at(t);
  return KernelOperator(h.source(), h.target(), std::move(kernel));
}

Factorization factor_atomic(const KernelOperator& T, const BooleanHom& h, std::span<const Rational> grid,
                            const Config& config, std::span<const Element> samples) {
  if (!h.is_isomorphism()) throw PreconditionError("factorization needs a Boolean isomorphism (bijective point map)");
  const auto atomic = is_atomic(T, h, AtomicMode::singleton, config);
  if (!atomic.verdict) throw PreconditionError("operator is not atomic subordinate to the given homomorphism");

  // (T(r·1))(t) = Σ_s kernel[s][t](r)
  const std::size_t n = T.source()->size();
  const std::size_t m = T.target()->size();
  std::vector<Expr> recovered(m);
  for (std::size_t t = 0; t < m; ++t) {
    Expr sum;
    for (std::size_t s = 0; s < n; ++s) {
      const Expr& g = T.entry(s, t);
      if (g.is_literal_zero()) continue;
      sum = sum.is_literal_zero() ? g : Expr::add(sum, g);
    }
    recovered[t] = std::move(sum);
  }
  Factorization out{SuperpositionKernel(T.target(), std::move(recovered)), {}};
  FactorCheck& check = out.check;

  for (const auto& r : grid) {
    ++check.grid_points;
    const Element image = T.apply(Element::constant(T.source(), r));
    for (std::size_t t = 0; t < m; ++t) {
      if (eval(out.kernel.at(t), r) != image[t] && check.recovered_on_grid) {
        check.recovered_on_grid = false;
        check.witness = "N(" + T.target()->point(t) + ", " + to_string(r) + ") != T(r·1)";
      }
    }
  }
  std::vector<Rational> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      const Rational jump = abs_value(eval(out.kernel.at(t), sorted[k]) - eval(out.kernel.at(t), sorted[k - 1]));
      if (jump > check.max_neighbour_jump) check.max_neighbour_jump = jump;
    }
  }

  std::vector<Element> xs(samples.begin(), samples.end());
  if (xs.empty()) {
    Sampler sampler(config.seed);
    for (int k = 0; k < 20; ++k) xs.push_back(sampler.element(T.source()));
  }
  const ShiftOperator shift(h);
  for (const auto& f : xs) {
    ++check.samples;
    const Element lhs = T.apply(f);
    const Element rhs = superpose(out.kernel, shift.apply(f));
    if (lhs != rhs && check.identity_on_samples) {
      check.identity_on_samples = false;
      check.witness = "f = " + to_string(f) + ": Tf = " + to_string(lhs) + " but N(·, S f) = " + to_string(rhs);
    }
  }
  return out;
}

}  // namespace oac
