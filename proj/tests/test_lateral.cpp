#include <gtest/gtest.h>

#include "oac/error.hpp"
#include "support.hpp"

using namespace oac;
using oac::test::diag;
using oac::test::kernel_op;
using oac::test::vec;

namespace {

const SpacePtr one = Space::make({"1"});
const SpacePtr two = Space::make({"1", "2"});

// Independent oracle: restrict x to every index subset, keep the members of D,
// take the coordinatewise maximum of T (0 when nothing qualifies).
std::vector<Rational> extension_oracle(const LateralIdeal& D, const std::function<Element(const Element&)>& T,
                                       const Element& x, std::size_t target_size) {
  std::vector<Rational> best(target_size);
  const std::size_t n = x.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) y[i] = x[i];
    const Element ye(x.space(), y);
    if (!D.contains(ye)) continue;
    const Element v = T(ye);
    for (std::size_t t = 0; t < target_size; ++t) best[t] = max_of(best[t], v[t]);
  }
  return best;
}

TEST(IdealContains, Examples) {
  const auto F = LateralIdeal::fragment_set(vec(two, {"1", "0"}));
  EXPECT_TRUE(ideal_contains(F, vec(two, {"1", "0"})));
  EXPECT_FALSE(ideal_contains(F, vec(two, {"2", "0"})));
  EXPECT_TRUE(ideal_contains(F, Element::zero(two)));

  const auto K = LateralIdeal::operator_kernel(diag(two, {"r", "r"}));
  EXPECT_TRUE(ideal_contains(K, Element::zero(two)));
  EXPECT_FALSE(ideal_contains(K, vec(two, {"1", "0"})));

  const auto O = LateralIdeal::order_ideal(two, {vec(two, {"1", "1"})});
  EXPECT_TRUE(ideal_contains(O, vec(two, {"3", "-2"})));
  const auto O2 = LateralIdeal::order_ideal(two, {vec(two, {"0", "1"})});
  EXPECT_FALSE(ideal_contains(O2, vec(two, {"1", "5"})));
  EXPECT_TRUE(ideal_contains(O2, vec(two, {"0", "-100"})));

  EXPECT_THROW(ideal_contains(F, Element::zero(one)), StructuralError);
}

TEST(IdealContains, KernelOfPositiveOperatorWithNontrivialZeros) {
  const auto K = LateralIdeal::operator_kernel(diag(two, {"max(r, 0)", "0"}));
  EXPECT_TRUE(ideal_contains(K, vec(two, {"-3", "7"})));
  EXPECT_FALSE(ideal_contains(K, vec(two, {"1/2", "0"})));
}

TEST(LateralIdeal, AxiomsAreCheckedAtConstruction) {
  // {[1, 1]} alone lacks its fragments
  EXPECT_THROW(LateralIdeal::explicit_list(two, {Element::zero(two), vec(two, {"1", "1"})}), PreconditionError);
  // {0, [1,0], [0,1]} lacks the disjoint sum [1,1]
  EXPECT_THROW(LateralIdeal::explicit_list(two, {Element::zero(two), vec(two, {"1", "0"}), vec(two, {"0", "1"})}),
               PreconditionError);
  // kernel of a non-positive operator: [1, 1] is in ker, its fragment [1, 0] is not
  EXPECT_THROW(LateralIdeal::operator_kernel(kernel_op(two, one, {{"r"}, {"-r"}})), PreconditionError);
  EXPECT_NO_THROW(LateralIdeal::explicit_list(
      two, {Element::zero(two), vec(two, {"1", "0"}), vec(two, {"0", "1"}), vec(two, {"1", "1"})}));
  EXPECT_NO_THROW(LateralIdeal::explicit_list(two, {}));
}

TEST(LateralIdeal, AxiomsHoldForEveryKind) {
  Sampler sampler(2);
  const auto grid = sampling_grid(21);
  for (int i = 0; i < 30; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(4));
    const std::vector<LateralIdeal> ideals{
        LateralIdeal::order_ideal(s, {sampler.element(s, 0.4)}),
        LateralIdeal::fragment_set(sampler.element(s)),
        LateralIdeal::operator_kernel(random_operator(sampler, s, Space::indexed(2), true)),
    };
    for (const auto& D : ideals) {
      const auto r = D.axiom_check(20, i, grid);
      EXPECT_TRUE(r.passed) << to_string(D.kind());
      EXPECT_TRUE(D.contains(Element::zero(s)));
      for (int k = 0; k < 5; ++k) {
        const auto y = D.sample_member(sampler, grid);
        ASSERT_TRUE(y.has_value());
        EXPECT_TRUE(D.contains(*y));
        for (const auto& f : fragments(*y)) EXPECT_TRUE(D.contains(f));
      }
    }
  }
}

TEST(MinimalExtension, FragmentSetExample) {
  const auto D = LateralIdeal::fragment_set(vec(two, {"1", "0"}));
  const PartialMap T = PartialMap::table(D, one, {{vec(two, {"1", "0"}), vec(one, {"3"})}});
  const auto oracle = extension_oracle(D, [&](const Element& y) { return T(y); }, vec(two, {"1", "5"}), 1);
  ASSERT_EQ(oracle, std::vector<Rational>{3});
  const MinimalExtension ext(T);
  EXPECT_EQ(ext(vec(two, {"1", "5"})), vec(one, {"3"}));
  EXPECT_EQ(ext.admissible_fragments(vec(two, {"1", "5"})), 2u);
  EXPECT_EQ(ext(vec(two, {"2", "5"})), vec(one, {"0"}));
  EXPECT_EQ(ext.admissible_fragments(vec(two, {"2", "5"})), 1u);
  EXPECT_THROW(T(vec(two, {"2", "0"})), PreconditionError);
}

TEST(MinimalExtension, EmptyIdealGivesZero) {
  const auto D = LateralIdeal::explicit_list(two, {});
  const MinimalExtension ext(PartialMap::table(D, one, {}));
  Sampler sampler(3);
  for (int i = 0; i < 30; ++i) {
    const Element x = sampler.element(two);
    EXPECT_EQ(ext(x), Element::zero(one));
    EXPECT_EQ(ext.admissible_fragments(x), 0u);
  }
}

TEST(MinimalExtension, AgreesWithIndependentEnumeration) {
  Sampler sampler(4);
  for (int i = 0; i < 60; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(4));
    const SpacePtr t = Space::indexed(1 + sampler.index(3));
    const KernelOperator T = random_operator(sampler, s, t, true);
    const LateralIdeal D = i % 2 ? LateralIdeal::fragment_set(sampler.element(s, 0.2))
                                 : LateralIdeal::order_ideal(s, {sampler.element(s, 0.5)});
    const PartialMap P = PartialMap::restriction(D, T);
    const MinimalExtension ext(P);
    for (int k = 0; k < 5; ++k) {
      Element x = sampler.element(s);
      if (auto y = D.sample_member(sampler, sampling_grid(21))) x = *y + x.restrict_to(y->support().complement());
      EXPECT_EQ(ext(x).values(), extension_oracle(D, [&](const Element& y) { return T.apply(y); }, x, t->size()));
    }
  }
}

TEST(MinimalExtension, RequiresPositivity) {
  const auto D = LateralIdeal::fragment_set(vec(two, {"1", "1"}));
  EXPECT_THROW(MinimalExtension(PartialMap::restriction(D, diag(two, {"-r", "r"}))), PreconditionError);
}

TEST(MinimalExtension, CapIsAHardError) {
  const SpacePtr big = Space::indexed(21);
  const auto D = LateralIdeal::explicit_list(big, {});
  const MinimalExtension ext(PartialMap::table(D, one, {}));
  EXPECT_THROW(ext(Element::constant(big, 1)), CapExceeded);
}

TEST(MinimalExtension, ExtendsMonotoneAndStabilizes) {
  Sampler sampler(5);
  for (int i = 0; i < 40; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(4));
    const SpacePtr t = Space::indexed(1 + sampler.index(3));
    const BooleanHom h = sampler.hom(s, t);
    const LateralIdeal D = LateralIdeal::fragment_set(sampler.element(s, 0.2));
    const PartialMap P = PartialMap::restriction(D, random_atomic_operator(sampler, h, true));
    const MinimalExtension ext(P);
    const auto members = D.members();
    ASSERT_TRUE(members.has_value());
    for (const auto& y : *members) EXPECT_EQ(ext(y), P(y));

    const Element x = sampler.element(s);
    const auto fs = fragments(x);
    for (const auto& y : fs) EXPECT_TRUE(leq(ext(y), ext(x)));

    // chain x_1 ⊑ x_2 ⊑ ... adding one support point at a time, stabilizing at x
    const auto support = x.support().indices();
    PointSet carrier(s->size());
    Element prev = ext(Element::zero(s));
    for (std::size_t k = 0; k < support.size(); ++k) {
      carrier.insert(support[k]);
      const Element cur = ext(x.restrict_to(carrier));
      EXPECT_TRUE(leq(prev, cur));
      prev = cur;
    }
    EXPECT_EQ(prev, ext(x));
  }
}

TEST(ExtensionAtomicCheck, FragmentSetOfAtomicOperator) {
  const SpacePtr s = Space::indexed(3);
  const BooleanHom h = BooleanHom::identity(s);
  const auto D = LateralIdeal::fragment_set(vec(s, {"1", "-2", "0"}));
  const auto r = extension_atomic_check(PartialMap::restriction(D, diag(s, {"abs(r)", "pow(r, 2)", "max(r, 0)"})), h, 40);
  EXPECT_TRUE(r.precondition_met);
  EXPECT_TRUE(r.passed);
}

TEST(ExtensionAtomicCheck, ZeroMap) {
  const SpacePtr s = Space::indexed(3);
  const auto D = LateralIdeal::order_ideal(s, {vec(s, {"1", "1", "0"})});
  const PartialMap Z = PartialMap::restriction(D, KernelOperator::zero(s, s));
  const auto r = extension_atomic_check(Z, BooleanHom::identity(s), 30);
  EXPECT_TRUE(r.passed);
  const MinimalExtension ext(Z);
  Sampler sampler(6);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(ext(sampler.element(s)).is_zero());
}

TEST(ExtensionAtomicCheck, NonAtomicMapIsRejectedByTheGate) {
  const auto D = LateralIdeal::fragment_set(vec(two, {"1", "1"}));
  const PartialMap T = PartialMap::restriction(D, kernel_op(two, two, {{"0", "abs(r)"}, {"0", "0"}}));
  const auto r = extension_atomic_check(T, BooleanHom::identity(two), 20);
  EXPECT_FALSE(r.precondition_met);
  EXPECT_FALSE(r.passed);
}

TEST(ExtensionAtomicCheck, SuiteOverAllIdealKinds) {
  Config config;
  config.grid = sampling_grid(41);
  const auto r = suite_extension(15, 5, 7, config);
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(PartialMap, ChecksOrthogonalAdditivityAndAtomicity) {
  const auto D = LateralIdeal::fragment_set(vec(two, {"1", "1"}));
  const PartialMap good = PartialMap::restriction(D, diag(two, {"abs(r)", "r"}));
  Config config;
  config.grid = sampling_grid(21);
  const BooleanHom id = BooleanHom::identity(two);
  EXPECT_TRUE(check_partial_map(good, 10, config, &id).passed);

  // T(y) = (y1 + y2)^2 on F_[1,1] is not orthogonally additive
  const PartialMap bad(D, one, [](const Element& y) {
    const Rational s = y[0] + y[1];
    return Element(one, {s * s});
  });
  const auto r = check_partial_map(bad, 10, config);
  EXPECT_FALSE(r.passed);
}

}  // namespace
