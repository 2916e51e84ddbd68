#include <gtest/gtest.h>

#include <set>

#include "oac/error.hpp"
#include "support.hpp"

using namespace oac;
using oac::test::diag;
using oac::test::kernel_op;
using oac::test::vec;

namespace {

const SpacePtr one = Space::make({"1"});
const SpacePtr two = Space::make({"1", "2"});
const SpacePtr z4 = Space::indexed(4);

Config small_grid() {
  Config c;
  c.grid = sampling_grid(41);
  return c;
}

TEST(IsAtomic, DiagonalKernelUnderIdentity) {
  const KernelOperator T = diag(two, {"pow(r, 3)", "abs(r) - r"});
  const auto r = is_atomic(T, BooleanHom::identity(two));
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.witnesses.empty());
  EXPECT_TRUE(is_atomic(T, BooleanHom::identity(two), AtomicMode::full).verdict);
}

TEST(IsAtomic, CyclicShiftUnderShiftHom) {
  // (T f)(i) = f(i - 1): kernel entry (i - 1, i) = r
  std::vector<Expr> k(16);
  for (std::size_t i = 0; i < 4; ++i) k[((i + 3) % 4) * 4 + i] = Expr::var();
  const KernelOperator T(z4, z4, k);
  const BooleanHom phi1(z4, z4, {3, 0, 1, 2});
  EXPECT_TRUE(is_atomic(T, phi1).verdict);
  EXPECT_TRUE(is_atomic(T, phi1, AtomicMode::full).verdict);
  EXPECT_FALSE(is_atomic(T, BooleanHom::identity(z4)).verdict);
}

TEST(IsAtomic, OffDiagonalEntryWitness) {
  const KernelOperator T = kernel_op(two, two, {{"0", "r"}, {"0", "0"}});
  const auto r = is_atomic(T, BooleanHom::identity(two));
  ASSERT_FALSE(r.verdict);
  ASSERT_FALSE(r.witnesses.empty());
  const auto& w = r.witnesses.front();
  EXPECT_EQ(w.carrier, PointSet::from_indices(2, {0}));
  EXPECT_EQ(w.element, vec(two, {"1", "0"}));
  EXPECT_EQ(w.left, vec(two, {"0", "1"}));
  EXPECT_TRUE(w.right.is_zero());
  // both sides recomputed directly
  const OrderProjection pi(two, w.carrier);
  EXPECT_EQ(T.apply(pi.apply(w.element)), w.left);
  EXPECT_EQ(BooleanHom::identity(two).apply(pi).apply(T.apply(w.element)), w.right);

  const auto full = is_atomic(T, BooleanHom::identity(two), AtomicMode::full);
  EXPECT_FALSE(full.verdict);
}

TEST(IsAtomic, ModesAgreeOnRandomOperators) {
  Sampler sampler(3);
  const Config config = small_grid();
  for (int i = 0; i < 60; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(4));
    const SpacePtr t = Space::indexed(1 + sampler.index(4));
    const BooleanHom h = sampler.hom(s, t);
    const KernelOperator T = sampler.coin() ? random_atomic_operator(sampler, h)
                                            : random_operator(sampler, s, t, false, 0.6);
    EXPECT_EQ(is_atomic(T, h, AtomicMode::singleton, config).verdict,
              is_atomic(T, h, AtomicMode::full, config).verdict);
  }
}

TEST(IsAtomic, FullModeCapAndSpaceChecks) {
  const SpacePtr seven = Space::indexed(7);
  EXPECT_THROW(is_atomic(KernelOperator::zero(seven, seven), BooleanHom::identity(seven), AtomicMode::full),
               CapExceeded);
  EXPECT_THROW(is_atomic(KernelOperator::zero(two, two), BooleanHom::identity(z4)), StructuralError);
}

TEST(PointwiseLattice, Examples) {
  const BooleanHom id1 = BooleanHom::identity(one);
  const KernelOperator M = pointwise_lattice_op(OperatorLatticeKind::modulus, diag(one, {"-r"}), nullptr, id1);
  EXPECT_EQ(M.apply(vec(one, {"2"})), vec(one, {"2"}));
  EXPECT_EQ(M.apply(vec(one, {"-5"})), vec(one, {"5"}));

  const KernelOperator T = diag(one, {"r"});
  const KernelOperator S = diag(one, {"2 * r"});
  const KernelOperator J = pointwise_lattice_op(OperatorLatticeKind::join, T, &S, id1);
  EXPECT_EQ(J.apply(vec(one, {"3"})), vec(one, {"6"}));
  EXPECT_EQ(brute_lattice_op(OperatorLatticeKind::join, T, &S, vec(one, {"3"})), vec(one, {"6"}));

  const KernelOperator P = pointwise_lattice_op(OperatorLatticeKind::pos, diag(one, {"min(r, 0)"}), nullptr, id1);
  for (const auto& r : sampling_grid(41)) EXPECT_EQ(P.apply(Element::constant(one, r)), Element::zero(one));
}

TEST(PointwiseLattice, RejectsNonAtomicInputs) {
  const KernelOperator T = kernel_op(two, one, {{"r"}, {"0"}});
  const KernelOperator S = kernel_op(two, one, {{"0"}, {"r"}});
  const BooleanHom h(two, one, {0});
  EXPECT_THROW(pointwise_lattice_op(OperatorLatticeKind::join, T, &S, h), PreconditionError);
  EXPECT_NO_THROW(pointwise_lattice_op(OperatorLatticeKind::pos, T, nullptr, h));
  const std::vector<const KernelOperator*> ops{&T, &S};
  EXPECT_FALSE(find_common_hom(ops).has_value());
}

TEST(PointwiseLattice, EqualsOracleAndStaysAtomic) {
  const auto r = suite_lattice(150, 3, 5, 77, small_grid());
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
  Sampler sampler(78);
  const Config config = small_grid();
  for (int i = 0; i < 40; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(5));
    const SpacePtr t = Space::indexed(1 + sampler.index(5));
    const BooleanHom h = sampler.hom(s, t);
    const KernelOperator T = random_atomic_operator(sampler, h);
    const KernelOperator A = pointwise_lattice_op(OperatorLatticeKind::modulus, T, nullptr, h, config);
    EXPECT_TRUE(is_atomic(A, h, AtomicMode::singleton, config).verdict);
    const Element x = sampler.element(s);
    EXPECT_EQ(A.apply(x), abs(T.apply(x)));
    const std::vector<const KernelOperator*> ops{&T};
    const auto found = find_common_hom(ops, config);
    ASSERT_TRUE(found.has_value());
    EXPECT_TRUE(is_atomic(T, *found, AtomicMode::singleton, config).verdict);
  }
}

TEST(PointwiseLattice, OracleSeparatesNonAtomicPairs) {
  // Forcing the pointwise formula on non-atomic operators must be caught by the oracle.
  Sampler sampler(79);
  int disagreements = 0;
  for (int i = 0; i < 60; ++i) {
    const SpacePtr s = Space::indexed(2 + sampler.index(3));
    const KernelOperator T = random_operator(sampler, s, one, false, 0.0);
    const KernelOperator S = random_operator(sampler, s, one, false, 0.0);
    const Element x = sampler.element(s, 0.0);
    const Element naive = join(T.apply(x), S.apply(x));
    if (naive != brute_lattice_op(OperatorLatticeKind::join, T, &S, x)) ++disagreements;
  }
  EXPECT_GT(disagreements, 10);
}

TEST(BandProjection, TwoPointSquareKernel) {
  const KernelOperator T = kernel_op(two, two, {{"pow(r, 2)", "pow(r, 2)"}, {"pow(r, 2)", "pow(r, 2)"}});
  const BooleanHom id = BooleanHom::identity(two);
  const Element x = vec(two, {"1", "2"});
  const std::vector<Element> samples{x};
  const auto bp = band_projection(T, id, BandMode::brute, {}, samples);
  EXPECT_EQ(bp.result.apply(x), vec(two, {"1", "4"}));
  EXPECT_EQ(T.apply(x), vec(two, {"5", "5"}));
  EXPECT_EQ(bp.partition_count, 2u);
  ASSERT_EQ(bp.rows.size(), 1u);
  EXPECT_EQ(bp.rows[0].brute_min, vec(two, {"1", "4"}));
  EXPECT_TRUE(bp.rows[0].singleton_attains);
  EXPECT_EQ(bp.rows[0].attaining, 1u);
  EXPECT_TRUE(bp.verified);
  // the two partitions, evaluated independently
  EXPECT_EQ(partition_sum(T, id, {{0, 1}}, x), vec(two, {"5", "5"}));
  EXPECT_EQ(partition_sum(T, id, {{0}, {1}}, x), vec(two, {"1", "4"}));

  const KernelOperator R = bp.result;
  EXPECT_EQ(band_projection(R, id).result.apply(x), R.apply(x));
  const auto props = band_projection_properties(T, R, id, {}, 20);
  EXPECT_TRUE(props.passed);
}

TEST(BandProjection, AtomicOperatorsAreFixed) {
  Sampler sampler(5);
  for (int i = 0; i < 20; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(4));
    const SpacePtr t = Space::indexed(1 + sampler.index(4));
    const BooleanHom h = sampler.hom(s, t);
    const KernelOperator T = random_atomic_operator(sampler, h, true);
    EXPECT_EQ(band_projection(T, h).result, T);
  }
  const KernelOperator Z = KernelOperator::zero(z4, two);
  EXPECT_EQ(band_projection(Z, BooleanHom(z4, two, {0, 3})).result, Z);
}

TEST(BandProjection, RequiresPositivity) {
  try {
    band_projection(diag(two, {"r", "abs(r)"}), BooleanHom::identity(two));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("not positive"), std::string::npos);
  }
  const SpacePtr seven = Space::indexed(7);
  EXPECT_THROW(band_projection(KernelOperator::zero(seven, one), BooleanHom(seven, one, {0}), BandMode::brute),
               CapExceeded);
}

TEST(BandProjection, ClosedFormIsThePartitionMinimum) {
  const auto r = suite_band(15, 10, 4, 91, small_grid());
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(BandProjection, RefinementMonotonicity) {
  Sampler sampler(6);
  const auto partitions = set_partitions(4);
  const SpacePtr s = Space::indexed(4);
  for (int i = 0; i < 20; ++i) {
    const SpacePtr t = Space::indexed(1 + sampler.index(4));
    const BooleanHom h = sampler.hom(s, t);
    const KernelOperator T = random_operator(sampler, s, t, true);
    const KernelOperator R = band_projection(T, h).result;
    const Element x = sampler.element(s);
    for (const auto& p : partitions) EXPECT_TRUE(leq(R.apply(x), partition_sum(T, h, p, x)));
  }
}

TEST(BandProjection, IdealPropertyOfAtomicOperators) {
  // 0 <= S <= T with T atomic: a masked, scaled sub-kernel of T is atomic.
  Sampler sampler(7);
  const Config config = small_grid();
  for (int i = 0; i < 30; ++i) {
    const SpacePtr s = Space::indexed(1 + sampler.index(5));
    const SpacePtr t = Space::indexed(1 + sampler.index(5));
    const BooleanHom h = sampler.hom(s, t);
    const KernelOperator T = random_atomic_operator(sampler, h, true);
    std::vector<Expr> sub = T.entries();
    for (auto& e : sub)
      if (!e.is_literal_zero()) e = sampler.coin() ? Expr() : Expr::mul(Expr::literal(Rational(1, 3)), e);
    const KernelOperator S(s, t, sub);
    const Element x = sampler.positive_element(s);
    EXPECT_TRUE(leq(S.apply(x), T.apply(x)));
    EXPECT_TRUE(is_atomic(S, h, AtomicMode::singleton, config).verdict);
  }
}

TEST(Locality, AtomicOperatorsPreserveDisjointnessAndFragments) {
  const auto r = suite_locality(30, 30, 8, small_grid());
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_GE(r.checks, 1800u);
}

TEST(Locality, NonAtomicOperatorIsCaught) {
  const KernelOperator T = kernel_op(two, one, {{"r"}, {"r"}});
  const auto r = check_locality(T, 200, 1);
  EXPECT_FALSE(r.passed);
}

TEST(Partitions, CountsMatchBellNumbers) {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_EQ(bell_number(n), bell[n]);
    EXPECT_EQ(set_partitions(n).size(), bell[n]);
  }
  const auto ps = set_partitions(5);
  std::set<std::vector<std::vector<std::size_t>>> unique(ps.begin(), ps.end());
  EXPECT_EQ(unique.size(), 52u);
  for (const auto& p : ps) {
    std::vector<int> seen(5, 0);
    for (const auto& block : p)
      for (auto i : block) ++seen[i];
    for (int c : seen) EXPECT_EQ(c, 1);
  }
  EXPECT_EQ(ps.front().size(), 1u);
  EXPECT_EQ(ps.back().size(), 5u);
}

}  // namespace
