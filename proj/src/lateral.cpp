#include "oac/lateral.hpp"

#include <algorithm>

#include "oac/error.hpp"

namespace oac {

const char* to_string(IdealKind kind) {
  switch (kind) {
    case IdealKind::order_ideal: return "order_ideal";
    case IdealKind::fragment_set: return "fragment_set";
    case IdealKind::operator_kernel: return "operator_kernel";
    case IdealKind::explicit_list: return "explicit";
  }
  return "?";
}

LateralIdeal::LateralIdeal(IdealKind kind, SpacePtr space, std::vector<Element> payload,
                           std::optional<KernelOperator> op)
    : kind_(kind), space_(std::move(space)), payload_(std::move(payload)), op_(std::move(op)) {
  for (const auto& e : payload_) require_same_space(space_, e.space(), "lateral ideal payload");
  if (kind_ == IdealKind::order_ideal) {
    Element g = Element::zero(space_);
    for (const auto& e : payload_) g = join(g, abs(e));
    order_generator_ = std::move(g);
  }
}

void LateralIdeal::validate() {
  const auto report = axiom_check(64, 7, sampling_grid(21));
  if (!report.passed) {
    for (const auto& c : report.checks)
      if (!c.passed) throw PreconditionError(std::string("not a lateral ideal (") + c.name + "): " + c.witness);
  }
}

LateralIdeal LateralIdeal::order_ideal(SpacePtr space, std::vector<Element> generators) {
  LateralIdeal d(IdealKind::order_ideal, std::move(space), std::move(generators), std::nullopt);
  d.validate();
  return d;
}

LateralIdeal LateralIdeal::fragment_set(Element anchor) {
  SpacePtr space = anchor.space();
  LateralIdeal d(IdealKind::fragment_set, std::move(space), {std::move(anchor)}, std::nullopt);
  d.validate();
  return d;
}

LateralIdeal LateralIdeal::operator_kernel(KernelOperator T) {
  SpacePtr space = T.source();
  LateralIdeal d(IdealKind::operator_kernel, std::move(space), {}, std::move(T));
  d.validate();
  return d;
}

LateralIdeal LateralIdeal::explicit_list(SpacePtr space, std::vector<Element> members) {
  std::vector<Element> unique;
  for (auto& m : members)
    if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(std::move(m));
  LateralIdeal d(IdealKind::explicit_list, std::move(space), std::move(unique), std::nullopt);
  d.validate();
  return d;
}

bool LateralIdeal::contains(const Element& x) const {
  require_same_space(space_, x.space(), "lateral ideal membership");
  switch (kind_) {
    case IdealKind::order_ideal: {
      // |x| <= c·g with c = max |x_s| / g_s over supp(x)
      const Element& g = *order_generator_;
      Rational c;
      for (std::size_t s = 0; s < x.size(); ++s) {
        if (x[s] == 0) continue;
        if (g[s] == 0) return false;
        c = max_of(c, Rational(abs_value(x[s]) / g[s]));
      }
      return leq(abs(x), c * g);
    }
    case IdealKind::fragment_set: return is_fragment(x, payload_.front());
    case IdealKind::operator_kernel: return op_->apply(x).is_zero();
    case IdealKind::explicit_list: return std::find(payload_.begin(), payload_.end(), x) != payload_.end();
  }
  return false;
}

std::optional<std::vector<Element>> LateralIdeal::members(std::size_t cap) const {
  if (kind_ == IdealKind::fragment_set) return fragments(payload_.front(), cap);
  if (kind_ == IdealKind::explicit_list) return payload_;
  return std::nullopt;
}

namespace {

// Values r with kernel[s][t](r) = 0 for every t: ker(T) of a positive kernel
// operator is the product of these per-coordinate zero sets.
std::vector<std::vector<Rational>> zero_sets(const KernelOperator& T, const std::vector<Rational>& grid) {
  std::vector<std::vector<Rational>> out(T.source()->size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s].push_back(0);
    for (const auto& r : grid) {
      if (r == 0) continue;
      bool zero = true;
      for (std::size_t t = 0; t < T.target()->size() && zero; ++t) zero = eval(T.entry(s, t), r) == 0;
      if (zero) out[s].push_back(r);
    }
  }
  return out;
}

}  // namespace

std::optional<Element> LateralIdeal::sample_member(Sampler& sampler, const std::vector<Rational>& grid) const {
  switch (kind_) {
    case IdealKind::order_ideal: return sampler.element(space_).restrict_to(order_generator_->support());
    case IdealKind::fragment_set: return payload_.front().restrict_to(sampler.subset(space_->size()));
    case IdealKind::operator_kernel: {
      const auto zs = zero_sets(*op_, grid);
      std::vector<Rational> v(space_->size());
      for (std::size_t s = 0; s < v.size(); ++s) v[s] = zs[s][sampler.index(zs[s].size())];
      Element y(space_, std::move(v));
      if (contains(y)) return y;
      return Element::zero(space_);
    }
    case IdealKind::explicit_list:
      if (payload_.empty()) return std::nullopt;
      return payload_[sampler.index(payload_.size())];
  }
  return std::nullopt;
}

PropertyReport LateralIdeal::axiom_check(std::size_t samples, std::uint64_t seed,
                                         const std::vector<Rational>& grid) const {
  std::vector<Element> pool;
  const auto finite = members();
  if (finite) {
    pool = *finite;
  } else {
    Sampler sampler(seed);
    pool.push_back(Element::zero(space_));
    for (std::size_t k = 0; k < samples; ++k)
      if (auto y = sample_member(sampler, grid)) pool.push_back(std::move(*y));
    if (kind_ == IdealKind::operator_kernel) {
      // Small-value probes catch kernels of non-positive operators.
      const Rational values[] = {0, 1, -1, 2, -2};
      const std::size_t n = space_->size();
      const bool exhaustive = n <= 4;
      std::size_t total = exhaustive ? 1 : samples;
      if (exhaustive)
        for (std::size_t i = 0; i < n; ++i) total *= 5;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<Rational> v(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
          v[i] = exhaustive ? values[c % 5] : values[sampler.index(5)];
          c /= 5;
        }
        Element y(space_, std::move(v));
        if (contains(y)) pool.push_back(std::move(y));
      }
    }
  }

  PropertyReport report;
  NamedCheck fragment_closed{"fragments of members are members", true, 0, {}};
  NamedCheck sum_closed{"disjoint sums of members are members", true, 0, {}};
  for (const auto& y : pool) {
    if (!contains(y)) continue;
    if (y.support().count() > 12) continue;
    for (const auto& f : fragments(y)) {
      ++fragment_closed.checks;
      if (fragment_closed.passed && !contains(f)) {
        fragment_closed.passed = false;
        fragment_closed.witness = to_string(f) + " ⊑ " + to_string(y) + " is not a member";
      }
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const Element& a = pool[i];
      Element b = pool[j];
      if (!is_disjoint(a, b)) b = b.restrict_to(a.support().complement());
      if (!contains(b)) continue;
      ++sum_closed.checks;
      if (sum_closed.passed && !contains(a + b)) {
        sum_closed.passed = false;
        sum_closed.witness = to_string(a) + " + " + to_string(b) + " is not a member";
      }
    }
  }
  report.add(std::move(fragment_closed));
  report.add(std::move(sum_closed));
  return report;
}

// ---------------------------------------------------------------------------

PartialMap::PartialMap(LateralIdeal domain, SpacePtr target, ElementMap action)
    : domain_(std::move(domain)), target_(std::move(target)), action_(std::move(action)) {}

PartialMap PartialMap::restriction(LateralIdeal domain, KernelOperator T) {
  require_same_space(domain.space(), T.source(), "restriction to a lateral ideal");
  SpacePtr target = T.target();
  return PartialMap(std::move(domain), std::move(target), [T = std::move(T)](const Element& y) { return T.apply(y); });
}

PartialMap PartialMap::table(LateralIdeal domain, SpacePtr target, std::vector<std::pair<Element, Element>> values) {
  for (const auto& [y, v] : values) {
    require_same_space(domain.space(), y.space(), "partial map table (argument)");
    require_same_space(target, v.space(), "partial map table (value)");
  }
  return PartialMap(std::move(domain), target, [values = std::move(values), target](const Element& y) {
    for (const auto& [arg, v] : values)
      if (arg == y) return v;
    if (y.is_zero()) return Element::zero(target);
    throw PreconditionError("partial map has no value at " + to_string(y));
  });
}

Element PartialMap::operator()(const Element& y) const {
  if (!domain_.contains(y)) throw PreconditionError(to_string(y) + " is outside the domain of the partial map");
  Element v = action_(y);
  require_same_space(target_, v.space(), "partial map value");
  return v;
}

std::vector<Element> check_members(const LateralIdeal& D, std::size_t samples, std::uint64_t seed,
                                   const std::vector<Rational>& grid) {
  if (auto finite = D.members()) return *finite;
  Sampler sampler(seed);
  std::vector<Element> out{Element::zero(D.space())};
  for (std::size_t k = 0; k < samples; ++k)
    if (auto y = D.sample_member(sampler, grid)) out.push_back(std::move(*y));
  return out;
}

PropertyReport check_partial_map(const PartialMap& T, std::size_t samples, const Config& config,
                                 const BooleanHom* atomic_hom) {
  const auto pool = check_members(T.domain(), samples, config.seed, config.grid);
  PropertyReport report;

  NamedCheck positive{"T y >= 0 on D", true, 0, {}};
  for (const auto& y : pool) {
    ++positive.checks;
    const Element v = T(y);
    if (!is_positive(v)) {
      positive.passed = false;
      positive.witness = "T" + to_string(y) + " = " + to_string(v);
      break;
    }
  }
  report.add(std::move(positive));

  NamedCheck additive{"T(y ⊔ z) = Ty + Tz on D", true, 0, {}};
  for (std::size_t i = 0; i < pool.size() && additive.passed; ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const Element z = pool[j].restrict_to(pool[i].support().complement());
      if (!T.domain().contains(z)) continue;
      ++additive.checks;
      const Element lhs = T(pool[i] + z);
      const Element rhs = T(pool[i]) + T(z);
      if (lhs != rhs) {
        additive.passed = false;
        additive.witness = "y = " + to_string(pool[i]) + ", z = " + to_string(z);
        break;
      }
    }
  }
  report.add(std::move(additive));

  if (atomic_hom) {
    require_same_space(atomic_hom->source(), T.domain().space(), "partial map atomicity (source)");
    require_same_space(atomic_hom->target(), T.target(), "partial map atomicity (target)");
    NamedCheck atomic{"T(π y) = Φ(π) T y on D", true, 0, {}};
    const std::size_t n = T.domain().space()->size();
    for (const auto& y : pool) {
      const Element ty = T(y);
      for (std::size_t s = 0; s < n && atomic.passed; ++s) {
        const OrderProjection pi(T.domain().space(), PointSet::from_indices(n, {s}));
        ++atomic.checks;
        const Element lhs = T(pi.apply(y));
        const Element rhs = atomic_hom->apply(pi).apply(ty);
        if (lhs != rhs) {
          atomic.passed = false;
          atomic.witness = "carrier {" + T.domain().space()->point(s) + "}, y = " + to_string(y) +
                           ": T(pi y) = " + to_string(lhs) + ", Phi(pi) T y = " + to_string(rhs);
        }
      }
      if (!atomic.passed) break;
    }
    report.add(std::move(atomic));
  }
  return report;
}

// ---------------------------------------------------------------------------

MinimalExtension::MinimalExtension(PartialMap T, const Config& config, std::size_t samples)
    : T_(std::move(T)), cap_(config.support_cap) {
  const auto pool = check_members(T_.domain(), samples, config.seed, config.grid);
  for (const auto& y : pool) {
    const Element v = T_(y);
    if (!is_positive(v))
      throw PreconditionError("partial map is not positive: T" + to_string(y) + " = " + to_string(v));
  }
}

Element MinimalExtension::operator()(const Element& x) const {
  require_same_space(T_.domain().space(), x.space(), "minimal extension");
  std::vector<Rational> best(T_.target()->size());
  for (const auto& y : fragments(x, cap_)) {
    if (!T_.domain().contains(y)) continue;
    const Element v = T_(y);
    for (std::size_t t = 0; t < best.size(); ++t)
      if (v[t] > best[t]) best[t] = v[t];
  }
  // positive T, so the maximum over a nonempty set is >= T(0) = 0 and the
  // zero initial value implements sup ∅ = 0
  return Element(T_.target(), std::move(best));
}

std::size_t MinimalExtension::admissible_fragments(const Element& x) const {
  std::size_t count = 0;
  for (const auto& y : fragments(x, cap_))
    if (T_.domain().contains(y)) ++count;
  return count;
}

Element minimal_extension(const PartialMap& T, const Element& x, const Config& config) {
  return MinimalExtension(T, config)(x);
}

ExtensionReport extension_atomic_check(const PartialMap& T, const BooleanHom& h, std::size_t samples,
                                       const Config& config) {
  ExtensionReport out;
  const auto gate = check_partial_map(T, samples, config, &h);
  for (const auto& c : gate.checks) {
    if (!c.passed) {
      out.precondition_met = false;
      out.passed = false;
      out.details.add({"precondition: " + c.name, false, c.checks, c.witness});
    }
  }
  if (!out.precondition_met) return out;

  const MinimalExtension ext(T, config, samples);
  const SpacePtr& space = T.domain().space();
  const std::size_t n = space->size();

  // Elements that share fragments with D: a member plus random values off its support.
  Sampler sampler(config.seed + 1);
  std::vector<Element> xs;
  for (std::size_t k = 0; k < samples; ++k) {
    Element x = sampler.element(space);
    if (sampler.coin(0.75)) {
      if (auto y = T.domain().sample_member(sampler, config.grid)) x = *y + x.restrict_to(y->support().complement());
    }
    if (x.support().count() <= config.support_cap) xs.push_back(std::move(x));
  }

  NamedCheck atomic{"extension: T̃(π x) = Φ(π) T̃ x", true, 0, {}};
  for (const auto& x : xs) {
    const Element tx = ext(x);
    for (std::size_t s = 0; s < n && atomic.passed; ++s) {
      const OrderProjection pi(space, PointSet::from_indices(n, {s}));
      ++atomic.checks;
      const Element lhs = ext(pi.apply(x));
      const Element rhs = h.apply(pi).apply(tx);
      if (lhs != rhs) {
        atomic.passed = false;
        atomic.witness = "carrier {" + space->point(s) + "}, x = " + to_string(x) + ": " + to_string(lhs) +
                         " vs " + to_string(rhs);
      }
    }
  }
  out.details.add(std::move(atomic));

  NamedCheck extends{"extension agrees with T on D", true, 0, {}};
  for (const auto& y : check_members(T.domain(), samples, config.seed, config.grid)) {
    ++extends.checks;
    const Element lhs = ext(y);
    const Element rhs = T(y);
    if (lhs != rhs) {
      extends.passed = false;
      extends.witness = "y = " + to_string(y) + ": " + to_string(lhs) + " vs " + to_string(rhs);
      break;
    }
  }
  out.details.add(std::move(extends));
  out.passed = out.details.passed;
  return out;
}

}  // namespace oac
