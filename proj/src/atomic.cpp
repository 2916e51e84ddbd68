#include "oac/atomic.hpp"

#include "oac/error.hpp"
#include "oac/random.hpp"

namespace oac {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

void require_hom_fits(const KernelOperator& T, const BooleanHom& h) {
  require_same_space(T.source(), h.source(), "atomicity (operator source vs hom source)");
  require_same_space(T.target(), h.target(), "atomicity (operator target vs hom target)");
}

std::vector<Rational> probe_points(const Config& config) {
  std::vector<Rational> probes{Rational(1)};
  probes.insert(probes.end(), config.grid.begin(), config.grid.end());
  return probes;
}

AtomicityReport singleton_check(const KernelOperator& T, const BooleanHom& h, const Config& config) {
  AtomicityReport report;
  report.mode = AtomicMode::singleton;
  const auto probes = probe_points(config);
  const std::size_t n = T.source()->size();
  const std::size_t m = T.target()->size();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      if (h(t) == s) continue;
      const Expr& g = T.entry(s, t);
      ++report.checks;
      if (g.is_literal_zero()) continue;
      for (const auto& r : probes) {
        if (eval(g, r) == 0) continue;
        report.verdict = false;
        if (report.witnesses.size() < kMaxWitnesses) {
          const OrderProjection pi(T.source(), PointSet::from_indices(n, {s}));
          Element x = Element::unit(T.source(), s, r);
          Element left = T.apply(pi.apply(x));
          Element right = h.apply(pi).apply(T.apply(x));
          report.witnesses.push_back({pi.carrier(), std::move(x), std::move(left), std::move(right)});
        }
        break;
      }
    }
  }
  return report;
}

AtomicityReport full_check(const KernelOperator& T, const BooleanHom& h, const Config& config) {
  const std::size_t n = T.source()->size();
  if (n > config.full_mode_cap || n > 20)
    throw CapExceeded("full atomicity check needs |source| <= " + std::to_string(config.full_mode_cap));
  AtomicityReport report;
  report.mode = AtomicMode::full;

  const Rational probes[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-2),
                             Rational(10), Rational(-1, 1000), Rational(7, 3)};
  std::vector<Element> tests;
  for (const auto& r : probes) {
    for (std::size_t s = 0; s < n; ++s) tests.push_back(Element::unit(T.source(), s, r));
    tests.push_back(Element::constant(T.source(), r));
  }
  Sampler sampler(config.seed);
  for (int k = 0; k < 6; ++k) tests.push_back(sampler.element(T.source()));

  std::vector<Element> images;
  images.reserve(tests.size());
  for (const auto& x : tests) images.push_back(T.apply(x));

  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    const OrderProjection pi(T.source(), PointSet::from_mask(n, a));
    const OrderProjection phi_pi = h.apply(pi);
    for (std::size_t k = 0; k < tests.size(); ++k) {
      ++report.checks;
      Element left = T.apply(pi.apply(tests[k]));
      Element right = phi_pi.apply(images[k]);
      if (left != right) {
        report.verdict = false;
        if (report.witnesses.size() < kMaxWitnesses)
          report.witnesses.push_back({pi.carrier(), tests[k], std::move(left), std::move(right)});
      }
    }
  }
  return report;
}

Expr pointwise_entry(OperatorLatticeKind kind, const Expr& g, const Expr* f) {
  switch (kind) {
    case OperatorLatticeKind::join: return Expr::max(g, *f);
    case OperatorLatticeKind::meet: return Expr::min(g, *f);
    case OperatorLatticeKind::pos: return Expr::max(g, Expr::literal(0));
    case OperatorLatticeKind::neg: return Expr::max(Expr::negate(g), Expr::literal(0));
    case OperatorLatticeKind::modulus: return Expr::abs(g);
  }
  return g;
}

std::string describe(const AtomicityReport& r, const Space& space) {
  if (r.witnesses.empty()) return "not atomic";
  const auto& w = r.witnesses.front();
  return "carrier " + to_string(w.carrier, space) + ", x = " + to_string(w.element) + ": T(pi x) = " +
         to_string(w.left) + " but Phi(pi) T x = " + to_string(w.right);
}

}  // namespace

AtomicityReport is_atomic(const KernelOperator& T, const BooleanHom& h, AtomicMode mode, const Config& config) {
  require_hom_fits(T, h);
  return mode == AtomicMode::singleton ? singleton_check(T, h, config) : full_check(T, h, config);
}

KernelOperator pointwise_lattice_op(OperatorLatticeKind kind, const KernelOperator& T, const KernelOperator* S,
                                    const BooleanHom& h, const Config& config) {
  const bool binary = kind == OperatorLatticeKind::join || kind == OperatorLatticeKind::meet;
  if (binary && !S) throw StructuralError("join/meet of operators needs a second operator");
  const auto rt = is_atomic(T, h, AtomicMode::singleton, config);
  if (!rt.verdict) throw PreconditionError("first operator is not atomic: " + describe(rt, *T.source()));
  if (binary) {
    const auto rs = is_atomic(*S, h, AtomicMode::singleton, config);
    if (!rs.verdict) throw PreconditionError("second operator is not atomic: " + describe(rs, *S->source()));
  }
  const std::size_t n = T.source()->size();
  const std::size_t m = T.target()->size();
  std::vector<Expr> kernel(n * m);
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t s = h(t);
    kernel[s * m + t] = pointwise_entry(kind, T.entry(s, t), binary ? &S->entry(s, t) : nullptr);
  }
  return KernelOperator(T.source(), T.target(), std::move(kernel));
}

std::optional<BooleanHom> find_common_hom(std::span<const KernelOperator* const> ops, const Config& config) {
  if (ops.empty()) return std::nullopt;
  const KernelOperator& first = *ops.front();
  for (const auto* op : ops) {
    require_same_space(first.source(), op->source(), "common hom search (source)");
    require_same_space(first.target(), op->target(), "common hom search (target)");
  }
  const auto probes = probe_points(config);
  const std::size_t n = first.source()->size();
  const std::size_t m = first.target()->size();
  std::vector<std::size_t> map(m, 0);
  for (std::size_t t = 0; t < m; ++t) {
    std::optional<std::size_t> forced;
    for (std::size_t s = 0; s < n; ++s) {
      bool live = false;
      for (const auto* op : ops)
        if (!vanishes_on(op->entry(s, t), probes)) live = true;
      if (!live) continue;
      if (forced && *forced != s) return std::nullopt;
      forced = s;
    }
    map[t] = forced.value_or(0);
  }
  return BooleanHom(first.source(), first.target(), std::move(map));
}

Element partition_sum(const KernelOperator& T, const BooleanHom& h, const SetPartition& partition, const Element& x) {
  const std::size_t n = T.source()->size();
  Element total = Element::zero(T.target());
  for (const auto& block : partition) {
    PointSet carrier(n);
    for (auto s : block) carrier.insert(s);
    const OrderProjection pi(T.source(), std::move(carrier));
    total = total + h.apply(pi).apply(T.apply(pi.apply(x)));
  }
  return total;
}

BandProjection band_projection(const KernelOperator& T, const BooleanHom& h, BandMode mode, const Config& config,
                               std::span<const Element> samples) {
  require_hom_fits(T, h);
  const auto positivity = check_positive(T, config.grid);
  if (!positivity.positive_on_grid) {
    const auto& w = *positivity.witness;
    throw PreconditionError("operator is not positive: kernel(" + T.source()->point(w.source_point) + ", " +
                            T.target()->point(w.target_point) + ") at r = " + to_string(w.r) + " is " +
                            to_string(w.value));
  }

  const std::size_t n = T.source()->size();
  const std::size_t m = T.target()->size();
  std::vector<Expr> kernel(n * m);
  for (std::size_t t = 0; t < m; ++t) kernel[h(t) * m + t] = T.entry(h(t), t);
  BandProjection out{KernelOperator(T.source(), T.target(), std::move(kernel)), mode, 0, {}, true};
  if (mode == BandMode::closed_form) return out;

  if (n > config.partition_cap)
    throw CapExceeded("partition enumeration needs |source| <= " + std::to_string(config.partition_cap));
  const auto partitions = set_partitions(n);
  out.partition_count = partitions.size();

  std::vector<Element> xs(samples.begin(), samples.end());
  if (xs.empty()) {
    Sampler sampler(config.seed);
    for (int k = 0; k < 20; ++k) xs.push_back(sampler.element(T.source()));
  }

  for (const auto& x : xs) {
    std::vector<Element> sums;
    sums.reserve(partitions.size());
    for (const auto& p : partitions) sums.push_back(partition_sum(T, h, p, x));
    std::vector<Rational> lowest = sums.front().values();
    for (const auto& v : sums)
      for (std::size_t t = 0; t < m; ++t)
        if (v[t] < lowest[t]) lowest[t] = v[t];
    Element brute_min(T.target(), std::move(lowest));
    std::size_t attaining = 0;
    for (const auto& v : sums)
      if (v == brute_min) ++attaining;
    PartitionRow row{x, out.result.apply(x), brute_min, attaining, sums.back() == brute_min};
    out.verified = out.verified && row.closed_form == row.brute_min;
    out.rows.push_back(std::move(row));
  }
  return out;
}

PropertyReport band_projection_properties(const KernelOperator& T1, const KernelOperator& T2, const BooleanHom& h,
                                          const Config& config, std::size_t samples) {
  Sampler sampler(config.seed);
  std::vector<Element> xs;
  for (std::size_t k = 0; k < samples; ++k) xs.push_back(sampler.element(T1.source()));

  const KernelOperator R1 = band_projection(T1, h, BandMode::closed_form, config).result;
  const KernelOperator R2 = band_projection(T2, h, BandMode::closed_form, config).result;
  PropertyReport report;

  NamedCheck bounds{"0 <= R(T)x <= Tx", true, 0, {}};
  for (const auto* pair : {&T1, &T2}) {
    const KernelOperator& T = *pair;
    const KernelOperator& R = pair == &T1 ? R1 : R2;
    for (const auto& x : xs) {
      ++bounds.checks;
      const Element rx = R.apply(x);
      const Element tx = T.apply(x);
      if (!is_positive(rx) || !leq(rx, tx)) {
        bounds.passed = false;
        bounds.witness = "x = " + to_string(x) + ": R(T)x = " + to_string(rx) + ", Tx = " + to_string(tx);
        break;
      }
    }
  }
  report.add(std::move(bounds));

  NamedCheck additive{"R(T1+T2) = R(T1)+R(T2)", true, 1, {}};
  const KernelOperator R12 = band_projection(T1 + T2, h, BandMode::closed_form, config).result;
  if (!operators_agree(R12, R1 + R2, config.grid, xs)) {
    additive.passed = false;
    additive.witness = "R(T1+T2) and R(T1)+R(T2) differ on the grid or samples";
  }
  report.add(std::move(additive));

  NamedCheck idempotent{"R(R(T)) = R(T)", true, 0, {}};
  for (const auto* R : {&R1, &R2}) {
    ++idempotent.checks;
    if (!operators_agree(band_projection(*R, h, BandMode::closed_form, config).result, *R, config.grid, xs)) {
      idempotent.passed = false;
      idempotent.witness = "R(R(T)) differs from R(T)";
    }
  }
  report.add(std::move(idempotent));

  NamedCheck fixed{"R(T) = T iff T atomic", true, 0, {}};
  for (const auto* pair : {&T1, &T2, &R1}) {
    ++fixed.checks;
    const KernelOperator R = band_projection(*pair, h, BandMode::closed_form, config).result;
    const bool fixed_point = operators_agree(R, *pair, config.grid, xs);
    const bool atomic = is_atomic(*pair, h, AtomicMode::singleton, config).verdict;
    if (fixed_point != atomic) {
      fixed.passed = false;
      fixed.witness = std::string("R(T) = T is ") + (fixed_point ? "true" : "false") + " but is_atomic is " +
                      (atomic ? "true" : "false");
    }
  }
  report.add(std::move(fixed));
  return report;
}

PropertyReport check_locality(const KernelOperator& T, std::size_t samples, std::uint64_t seed, std::size_t cap) {
  Sampler sampler(seed);
  PropertyReport report;
  NamedCheck disjoint{"x ⊥ y ⇒ Tx ⊥ Ty", true, 0, {}};
  NamedCheck fragment{"y ⊑ x ⇒ Ty ⊑ Tx, |Ty| <= |Tx|", true, 0, {}};
  for (std::size_t k = 0; k < samples; ++k) {
    auto [x, y] = sampler.disjoint_pair(T.source());
    ++disjoint.checks;
    const Element tx = T.apply(x);
    const Element ty = T.apply(y);
    if (disjoint.passed && !is_disjoint(tx, ty)) {
      disjoint.passed = false;
      disjoint.witness = "x = " + to_string(x) + ", y = " + to_string(y) + ": Tx = " + to_string(tx) +
                         ", Ty = " + to_string(ty);
    }

    const Element w = x + y;
    if (w.support().count() > cap) continue;
    // x is a fragment of w = x ⊔ y
    ++fragment.checks;
    const Element tw = T.apply(w);
    if (fragment.passed && (!is_fragment(tx, tw) || !leq(abs(tx), abs(tw)))) {
      fragment.passed = false;
      fragment.witness = "y = " + to_string(x) + " ⊑ x = " + to_string(w) + ": Ty = " + to_string(tx) +
                         ", Tx = " + to_string(tw);
    }
  }
  report.add(std::move(disjoint));
  report.add(std::move(fragment));
  return report;
}

}  // namespace oac
