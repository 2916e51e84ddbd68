#include <gtest/gtest.h>

#include "oac/error.hpp"
#include "support.hpp"

using namespace oac;
using oac::test::vec;

namespace {

const SpacePtr two = Space::make({"1", "2"});
const SpacePtr z4 = Space::indexed(4);

TEST(Projection, Examples) {
  const Element x = vec(two, {"5", "7"});
  EXPECT_EQ(apply_projection(OrderProjection(two, PointSet::from_indices(2, {0})), x), vec(two, {"5", "0"}));
  EXPECT_EQ(apply_projection(OrderProjection(two, PointSet(2)), x), Element::zero(two));
  EXPECT_EQ(apply_projection(OrderProjection(two, PointSet::full(2)), x), x);
}

TEST(Projection, CarrierMustFitTheSpace) {
  EXPECT_THROW(OrderProjection(two, PointSet(3)), StructuralError);
  EXPECT_THROW(OrderProjection(two, PointSet(2)).apply(Element::zero(z4)), StructuralError);
}

TEST(Projection, IdempotentPositiveBelowIdentity) {
  Sampler sampler(2);
  for (int i = 0; i < 200; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(6));
    const OrderProjection p(s, sampler.subset(s->size()));
    const Element x = sampler.positive_element(s);
    EXPECT_EQ(p.apply(p.apply(x)), p.apply(x));
    EXPECT_TRUE(is_positive(p.apply(x)));
    EXPECT_TRUE(leq(p.apply(x), x));
  }
}

TEST(SupportProjection, Examples) {
  const SpacePtr s3 = Space::make({"1", "2", "3"});
  EXPECT_EQ(support_projection(vec(s3, {"0", "3", "0"})).carrier(), PointSet::from_indices(3, {1}));
  EXPECT_TRUE(support_projection(Element::zero(s3)).carrier().empty());
  EXPECT_EQ(support_projection(vec(two, {"1", "1"})).carrier(), PointSet::full(2));
}

TEST(HomApply, CyclicShift) {
  // point_map t -> t - 1 mod 4
  const BooleanHom h(z4, z4, {3, 0, 1, 2});
  EXPECT_EQ(hom_apply(h, PointSet::from_indices(4, {0, 2})), PointSet::from_indices(4, {1, 3}));
  EXPECT_EQ(hom_apply(h, PointSet(4)), PointSet(4));
  EXPECT_EQ(hom_apply(h, PointSet::full(4)), PointSet::full(4));
  EXPECT_THROW(hom_apply(h, PointSet(5)), StructuralError);
}

TEST(BooleanHom, PointMapMustBeTotalAndInRange) {
  EXPECT_THROW(BooleanHom(z4, two, {0}), StructuralError);
  EXPECT_THROW(BooleanHom(two, two, {0, 2}), StructuralError);
}

TEST(HomCheck, PreimageMapsPass) {
  Sampler sampler(4);
  for (int i = 0; i < 50; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(6));
    const SpacePtr t = Space::indexed(1 + sampler.index(6));
    const auto r = hom_check(sampler.hom(s, t));
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.exhaustive);
  }
  const auto id = hom_check(BooleanHom::identity(z4));
  EXPECT_TRUE(id.passed);
  for (std::uint64_t m = 0; m < 16; ++m)
    EXPECT_EQ(BooleanHom::identity(z4).apply(PointSet::from_mask(4, m)), PointSet::from_mask(4, m));
}

TEST(HomCheck, LargeSourcesAreSampled) {
  const SpacePtr s = Space::indexed(9);
  const auto r = hom_check(BooleanHom::identity(s));
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_GT(r.checks, 0u);
}

TEST(HomCheck, HandWrittenTableViolatingMeets) {
  // Φ({a}) and Φ({b}) overlap, so Φ({a} ∩ {b}) = ∅ ≠ Φ({a}) ∩ Φ({b}).
  SetMapTable table{two, two, {}};
  table.image = {PointSet(2), PointSet::from_indices(2, {0}), PointSet::from_indices(2, {0, 1}), PointSet::full(2)};
  const auto r = hom_check(table);
  EXPECT_FALSE(r.passed);
  bool meets = false;
  for (const auto& f : r.failures) meets = meets || f.axiom == 2;
  EXPECT_TRUE(meets);
}

TEST(HomCheck, TabulatedHomPasses) {
  const BooleanHom h(z4, two, {3, 3});
  const auto table = tabulate(h);
  EXPECT_EQ(table.image.size(), 16u);
  EXPECT_TRUE(hom_check(table).passed);
}

TEST(BooleanHom, IsomorphismIffBijective) {
  Sampler sampler(6);
  for (int i = 0; i < 100; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(5));
    const BooleanHom b = sampler.bijection(s, s);
    ASSERT_TRUE(b.is_isomorphism());
    const BooleanHom inv = b.inverse();
    const PointSet a = sampler.subset(s->size());
    EXPECT_EQ(inv.apply(b.apply(a)), a);
    EXPECT_EQ(b.apply(inv.apply(a)), a);
  }
  const BooleanHom fold(two, two, {0, 0});
  EXPECT_FALSE(fold.is_isomorphism());
  EXPECT_THROW(fold.inverse(), PreconditionError);
  EXPECT_FALSE(BooleanHom(two, z4, {0, 1, 0, 1}).is_isomorphism());
}

TEST(BooleanHom, PreservesUnionsIntersectionsComplements) {
  Sampler sampler(7);
  for (int i = 0; i < 300; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(7));
    const SpacePtr t = Space::indexed(1 + sampler.index(7));
    const BooleanHom h = sampler.hom(s, t);
    const PointSet a = sampler.subset(s->size());
    const PointSet b = sampler.subset(s->size());
    EXPECT_EQ(h.apply(a.unite(b)), h.apply(a).unite(h.apply(b)));
    EXPECT_EQ(h.apply(a.intersect(b)), h.apply(a).intersect(h.apply(b)));
    EXPECT_EQ(h.apply(a.complement()), h.apply(a).complement());
  }
}

}  // namespace
