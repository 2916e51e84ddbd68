#include "oac/operator.hpp"

#include "oac/error.hpp"
#include "oac/random.hpp"

namespace oac {

KernelOperator::KernelOperator(SpacePtr source, SpacePtr target, std::vector<Expr> kernel)
    : source_(std::move(source)), target_(std::move(target)), kernel_(std::move(kernel)) {
  if (!source_ || !target_) throw StructuralError("operator needs source and target spaces");
  const std::size_t m = target_->size();
  if (kernel_.size() != source_->size() * m) throw StructuralError("kernel table must have |source|·|target| entries");
  for (std::size_t i = 0; i < kernel_.size(); ++i) {
    if (kernel_[i].is_literal_zero()) continue;
    const auto where = "(" + source_->point(i / m) + ", " + target_->point(i % m) + ")";
    Rational at_zero;
    try {
      at_zero = eval(kernel_[i], 0);
    } catch (const EvalError& e) {
      throw StructuralError("kernel entry " + where + " is undefined at r = 0: " + e.what());
    }
    if (at_zero != 0)
      throw StructuralError("kernel entry " + where + " = " + print(kernel_[i]) + " does not vanish at r = 0");
  }
}

KernelOperator KernelOperator::zero(SpacePtr source, SpacePtr target) {
  const auto n = source->size() * target->size();
  return KernelOperator(std::move(source), std::move(target), std::vector<Expr>(n));
}

KernelOperator KernelOperator::diagonal(SpacePtr space, std::vector<Expr> diag) {
  const auto n = space->size();
  if (diag.size() != n) throw StructuralError("diagonal kernel must have one entry per point");
  std::vector<Expr> kernel(n * n);
  for (std::size_t s = 0; s < n; ++s) kernel[s * n + s] = std::move(diag[s]);
  return KernelOperator(space, space, std::move(kernel));
}

Element KernelOperator::apply(const Element& x) const {
  require_same_space(source_, x.space(), "operator evaluation");
  const std::size_t m = target_->size();
  std::vector<Rational> out(m);
  for (std::size_t s = 0; s < source_->size(); ++s) {
    // kernel entries vanish at 0
    if (x[s] == 0) continue;
    for (std::size_t t = 0; t < m; ++t) {
      const Expr& g = kernel_[s * m + t];
      if (!g.is_literal_zero()) out[t] += eval(g, x[s]);
    }
  }
  return Element(target_, std::move(out));
}

KernelOperator KernelOperator::operator-() const {
  std::vector<Expr> k;
  k.reserve(kernel_.size());
  for (const auto& g : kernel_) k.push_back(g.is_literal_zero() ? g : Expr::negate(g));
  return KernelOperator(source_, target_, std::move(k));
}

KernelOperator operator+(const KernelOperator& a, const KernelOperator& b) {
  require_same_space(a.source_, b.source_, "operator sum (source)");
  require_same_space(a.target_, b.target_, "operator sum (target)");
  std::vector<Expr> k;
  k.reserve(a.kernel_.size());
  for (std::size_t i = 0; i < a.kernel_.size(); ++i) {
    const Expr& x = a.kernel_[i];
    const Expr& y = b.kernel_[i];
    k.push_back(x.is_literal_zero() ? y : y.is_literal_zero() ? x : Expr::add(x, y));
  }
  return KernelOperator(a.source_, a.target_, std::move(k));
}

KernelOperator operator-(const KernelOperator& a, const KernelOperator& b) { return a + (-b); }

KernelOperator KernelOperator::scaled(const Rational& c) const {
  std::vector<Expr> k;
  k.reserve(kernel_.size());
  for (const auto& g : kernel_)
    k.push_back(g.is_literal_zero() || c == 0 ? Expr() : c == 1 ? g : Expr::mul(Expr::literal(c), g));
  return KernelOperator(source_, target_, std::move(k));
}

bool operator==(const KernelOperator& a, const KernelOperator& b) {
  return same_space(a.source_, b.source_) && same_space(a.target_, b.target_) && a.kernel_ == b.kernel_;
}

Element eval_op(const KernelOperator& T, const Element& x) { return T.apply(x); }

bool vanishes_on(const Expr& e, std::span<const Rational> grid) {
  if (e.is_literal_zero()) return true;
  for (const auto& r : grid)
    if (eval(e, r) != 0) return false;
  return true;
}

bool operators_agree(const KernelOperator& a, const KernelOperator& b, std::span<const Rational> grid,
                     std::span<const Element> samples) {
  if (!same_space(a.source(), b.source()) || !same_space(a.target(), b.target())) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const Expr& x = a.entries()[i];
    const Expr& y = b.entries()[i];
    if (x == y) continue;
    for (const auto& r : grid)
      if (eval(x, r) != eval(y, r)) return false;
  }
  for (const auto& s : samples)
    if (a.apply(s) != b.apply(s)) return false;
  return true;
}

PositivityReport check_positive(const KernelOperator& T, std::span<const Rational> grid) {
  PositivityReport report;
  const std::size_t m = T.target()->size();
  for (std::size_t s = 0; s < T.source()->size(); ++s)
    for (std::size_t t = 0; t < m; ++t) {
      const Expr& g = T.entry(s, t);
      if (g.is_literal_zero()) continue;
      for (const auto& r : grid) {
        ++report.checks;
        Rational v = eval(g, r);
        if (v < 0) {
          report.positive_on_grid = false;
          report.witness = PositivityWitness{s, t, r, std::move(v)};
          return report;
        }
      }
    }
  return report;
}

// ---------------------------------------------------------------------------

BruteLattice brute_lattice_detail(OperatorLatticeKind kind, const KernelOperator& T, const KernelOperator* S,
                                  const Element& x, std::size_t cap) {
  const bool binary = kind == OperatorLatticeKind::join || kind == OperatorLatticeKind::meet;
  if (binary) {
    if (!S) throw StructuralError("join/meet of operators needs a second operator");
    require_same_space(T.source(), S->source(), "operator lattice (source)");
    require_same_space(T.target(), S->target(), "operator lattice (target)");
  }
  require_same_space(T.source(), x.space(), "operator lattice evaluation");

  const auto support = x.support().indices();
  if (support.size() > cap || support.size() > 63)
    throw CapExceeded("support of size " + std::to_string(support.size()) + " exceeds the decomposition cap " +
                      std::to_string(cap));
  const std::uint64_t count = std::uint64_t{1} << support.size();
  const std::uint64_t full = count - 1;

  // T and S on every fragment of x
  std::vector<Element> t_img;
  std::vector<Element> s_img;
  t_img.reserve(count);
  for (std::uint64_t a = 0; a < count; ++a) t_img.push_back(T.apply(fragment_at(x, support, a)));
  if (binary) {
    s_img.reserve(count);
    for (std::uint64_t a = 0; a < count; ++a) s_img.push_back(S->apply(fragment_at(x, support, a)));
  }

  auto candidate = [&](std::uint64_t a) -> Element {
    switch (kind) {
      case OperatorLatticeKind::join:
      case OperatorLatticeKind::meet: return t_img[a] + s_img[full & ~a];
      case OperatorLatticeKind::pos:
      case OperatorLatticeKind::neg: return t_img[a];
      case OperatorLatticeKind::modulus: return t_img[a] - t_img[full & ~a];
    }
    return t_img[a];
  };
  const bool take_max = kind != OperatorLatticeKind::meet && kind != OperatorLatticeKind::neg;

  const std::size_t m = T.target()->size();
  std::vector<Rational> best = candidate(0).values();
  std::vector<std::uint64_t> arg(m, 0);
  for (std::uint64_t a = 1; a < count; ++a) {
    const Element c = candidate(a);
    for (std::size_t t = 0; t < m; ++t) {
      if (take_max ? c[t] > best[t] : c[t] < best[t]) {
        best[t] = c[t];
        arg[t] = a;
      }
    }
  }
  if (kind == OperatorLatticeKind::neg)
    for (auto& v : best) v = -v;

  BruteLattice out{Element(T.target(), std::move(best)), {}, count};
  for (std::size_t t = 0; t < m; ++t) out.attained_at.push_back(fragment_at(x, support, arg[t]));
  return out;
}

Element brute_lattice_op(OperatorLatticeKind kind, const KernelOperator& T, const KernelOperator* S, const Element& x,
                         std::size_t cap) {
  return brute_lattice_detail(kind, T, S, x, cap).value;
}

// ---------------------------------------------------------------------------

OaReport check_oa(const ElementMap& T, const SpacePtr& source, std::size_t samples, std::uint64_t seed) {
  OaReport report;
  auto probe = [&](const Element& y, const Element& z) {
    ++report.checks;
    Element lhs = T(y + z);
    Element rhs = T(y) + T(z);
    if (lhs != rhs) {
      report.passed = false;
      report.witness = OaWitness{y, z, std::move(lhs), std::move(rhs)};
      return false;
    }
    return true;
  };

  const Element zero = Element::zero(source);
  if (!probe(zero, zero)) return report;
  const std::size_t n = source->size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!probe(Element::unit(source, i), Element::unit(source, j))) return report;

  Sampler sampler(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    auto [y, z] = sampler.disjoint_pair(source);
    if (!probe(y, z)) return report;
  }
  return report;
}

OaReport check_oa(const KernelOperator& T, std::size_t samples, std::uint64_t seed) {
  return check_oa([&T](const Element& x) { return T.apply(x); }, T.source(), samples, seed);
}

std::optional<BoundWitness> order_bound_witness(const KernelOperator& T, const Element& box, const Rational& M,
                                                std::size_t resolution) {
  require_same_space(T.source(), box.space(), "order bound search");
  if (!is_positive(box)) throw PreconditionError("bound box must be nonnegative");
  if (resolution == 0) throw PreconditionError("resolution must be positive");

  std::vector<Element> rays{box};
  const auto support = box.support().indices();
  if (support.size() > 1)
    for (auto s : support) rays.push_back(Element::unit(box.space(), s, box[s]));
  if (support.empty()) return std::nullopt;

  auto exceeds = [&](const Element& image) {
    for (const auto& v : image.values())
      if (abs_value(v) >= M) return true;
    return false;
  };

  for (int sign : {1, -1}) {
    for (std::size_t k = 1; k <= resolution; ++k) {
      Rational c(static_cast<long>(k) * sign, static_cast<long>(resolution));
      c.canonicalize();
      for (const auto& ray : rays) {
        Element x = c * ray;
        Element image = T.apply(x);
        if (exceeds(image)) return BoundWitness{std::move(x), std::move(image)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace oac
