#include <gtest/gtest.h>

#include "oac/error.hpp"
#include "support.hpp"

using namespace oac;
using oac::test::diag;
using oac::test::q;
using oac::test::vec;

namespace {

const SpacePtr one = Space::make({"1"});
const SpacePtr two = Space::make({"1", "2"});
const SpacePtr z4 = Space::indexed(4);

SuperpositionKernel kernel(const SpacePtr& s, std::initializer_list<const char*> exprs) {
  std::vector<Expr> v;
  for (const char* e : exprs) v.push_back(parse_expr(e));
  return SuperpositionKernel(s, std::move(v));
}

TEST(Superpose, Examples) {
  EXPECT_EQ(superpose(kernel(two, {"pow(r, 2)", "pow(r, 2)"}), vec(two, {"2", "-3"})), vec(two, {"4", "9"}));
  EXPECT_TRUE(superpose(kernel(two, {"pow(r, 2)", "abs(r)"}), Element::zero(two)).is_zero());
  // N(s, r) = s * r with s the point label
  EXPECT_EQ(superpose(kernel(two, {"r", "2 * r"}), vec(two, {"5", "5"})), vec(two, {"5", "10"}));
}

TEST(Superpose, KernelMustVanishAtZero) {
  EXPECT_THROW(kernel(two, {"r", "r + 1"}), StructuralError);
  EXPECT_THROW(kernel(two, {"r"}), StructuralError);
}

TEST(Shift, Examples) {
  const ShiftOperator swap(BooleanHom(two, two, {1, 0}));
  EXPECT_EQ(swap.apply(vec(two, {"1", "2"})), vec(two, {"2", "1"}));
  Sampler sampler(1);
  for (int i = 0; i < 20; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(5));
    const SpacePtr t = Space::indexed(1 + sampler.index(5));
    const Rational r = sampler.rational();
    EXPECT_EQ(shift_apply(ShiftOperator(sampler.hom(s, t)), Element::constant(s, r)), Element::constant(t, r));
  }
  const ShiftOperator cyc(BooleanHom(z4, z4, {3, 0, 1, 2}));
  EXPECT_EQ(cyc.apply(Element::unit(z4, 0)), Element::unit(z4, 1));
}

TEST(Shift, LinearPositiveAndInvertible) {
  Sampler sampler(2);
  for (int i = 0; i < 100; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(5));
    const SpacePtr t = Space::indexed(1 + sampler.index(5));
    const ShiftOperator S(sampler.hom(s, t));
    const Element f = sampler.element(s);
    const Element g = sampler.element(s);
    const Rational c = sampler.rational();
    EXPECT_EQ(S.apply(f + c * g), S.apply(f) + c * S.apply(g));
    EXPECT_TRUE(is_positive(S.apply(abs(f))));
    const ShiftOperator B(sampler.bijection(s, s));
    EXPECT_EQ(B.inverse().apply(B.apply(f)), f);
    EXPECT_EQ(B.apply(B.inverse().apply(f)), f);
  }
  EXPECT_THROW(ShiftOperator(BooleanHom(two, two, {0, 0})).inverse(), PreconditionError);
  EXPECT_THROW(ShiftOperator(BooleanHom(two, two, {0, 1})).apply(Element::zero(one)), StructuralError);
}

TEST(Rho, Examples) {
  Sampler sampler(3);
  for (int i = 0; i < 50; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(4));
    const Element f = sampler.element(s);
    const Element g = sampler.element(s);
    EXPECT_EQ(rho_metric(f, f), 0);
    EXPECT_EQ(rho_metric(f, g), rho_metric(g, f));
    EXPECT_GE(rho_metric(f, g), 0);
  }
  EXPECT_EQ(rho_metric(vec(one, {"1"}), vec(one, {"0"})), q("1/2"));
  const auto weighted = std::make_shared<const Space>(std::vector<std::string>{"a", "b"}, std::vector<Rational>{1, 1},
                                                      std::vector<Rational>{q("1/4"), q("3/4")});
  // 1/4 * (2/3) + 3/4 * (1/2)
  EXPECT_EQ(rho_metric(vec(weighted, {"2", "0"}), vec(weighted, {"0", "1"})), q("1/6") + q("3/8"));
  EXPECT_THROW(rho_metric(vec(one, {"1"}), vec(two, {"1", "1"})), StructuralError);
}

TEST(Rho, ContinuityAlongStabilizingSequences) {
  // f_n = g + e/n (then constant from n = 50): rho(T f_n, T g) decreases to 0.
  const SpacePtr s = Space::indexed(3);
  const KernelOperator T = diag(s, {"pow(r, 3)", "abs(r)", "max(r, 0) * 2"});
  const Element g = vec(s, {"1", "-2", "1/2"});
  const Element e = vec(s, {"1", "1", "-1"});
  Rational prev = -1;
  for (int n = 1; n <= 60; ++n) {
    const Element fn = n < 50 ? g + Rational(1, n) * e : g;
    const Rational d = rho_metric(T.apply(fn), T.apply(g));
    if (n > 1 && n < 50) EXPECT_LT(d, prev);
    if (n >= 50) EXPECT_EQ(d, 0);
    prev = d;
  }
}

TEST(Factor, SwapWithLabelledKernel) {
  const SuperpositionKernel N = kernel(two, {"r", "2 * r"});
  const BooleanHom swap(two, two, {1, 0});
  const KernelOperator T = compose(N, ShiftOperator(swap));
  const auto f = factor_atomic(T, swap, sampling_grid());
  EXPECT_EQ(eval(f.kernel.at(0), 5), 5);
  EXPECT_EQ(eval(f.kernel.at(1), 5), 10);
  EXPECT_TRUE(f.check.recovered_on_grid);
  EXPECT_TRUE(f.check.identity_on_samples);
  EXPECT_EQ(f.check.grid_points, sampling_grid().size());
}

TEST(Factor, IdentityHomRecoversTheDiagonal) {
  const KernelOperator T = diag(two, {"pow(r, 2) - r", "ifzero(r, 0, div(1, pow(r, 2)))"});
  const auto grid = sampling_grid();
  const auto f = factor_atomic(T, BooleanHom::identity(two), grid);
  for (const auto& r : grid) {
    EXPECT_EQ(eval(f.kernel.at(0), r), eval(T.entry(0, 0), r));
    EXPECT_EQ(eval(f.kernel.at(1), r), eval(T.entry(1, 1), r));
  }
  // 1/r² jumps by 10^6 between 0 and 1/1000 on the sampling grid
  EXPECT_GE(f.check.max_neighbour_jump, 1000000);
}

TEST(Factor, RoundTrip) {
  const auto r = suite_factor(40, 20, 5, 4, Config{});
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(Factor, ConverseCompositionIsAtomic) {
  Sampler sampler(5);
  for (int i = 0; i < 40; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(5));
    const SpacePtr t = Space::indexed(1 + sampler.index(5));
    std::vector<Expr> per;
    for (std::size_t k = 0; k < t->size(); ++k) per.push_back(sampler.kernel_expr(2));
    const BooleanHom h = sampler.hom(s, t);
    const KernelOperator T = compose(SuperpositionKernel(t, per), ShiftOperator(h));
    EXPECT_TRUE(is_atomic(T, h).verdict);
    const Element f = sampler.element(s);
    EXPECT_EQ(T.apply(f), superpose(SuperpositionKernel(t, per), ShiftOperator(h).apply(f)));
  }
}

TEST(Factor, Preconditions) {
  const KernelOperator T = diag(two, {"r", "r"});
  EXPECT_THROW(factor_atomic(T, BooleanHom(two, two, {0, 0}), sampling_grid(21)), PreconditionError);
  const KernelOperator cross = oac::test::kernel_op(two, two, {{"r", "r"}, {"0", "r"}});
  EXPECT_THROW(factor_atomic(cross, BooleanHom::identity(two), sampling_grid(21)), PreconditionError);
}

}  // namespace
