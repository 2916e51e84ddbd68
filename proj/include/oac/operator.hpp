#pragma once

// Orthogonally additive operators in kernel normal form
//   (T x)_t = Σ_s kernel[s][t](x_s),
// and the brute-force lattice calculus over disjoint decompositions.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "oac/kernel_expr.hpp"
#include "oac/lattice.hpp"

namespace oac {

class KernelOperator {
 public:
  /// `kernel` is row-major: kernel[s * |target| + t]. Every entry must
  /// vanish at r = 0 (throws StructuralError otherwise).
  KernelOperator(SpacePtr source, SpacePtr target, std::vector<Expr> kernel);

  static KernelOperator zero(SpacePtr source, SpacePtr target);
  /// Square operator with `diag[s]` at (s, s) and zeros elsewhere.
  static KernelOperator diagonal(SpacePtr space, std::vector<Expr> diag);

  const SpacePtr& source() const noexcept { return source_; }
  const SpacePtr& target() const noexcept { return target_; }
  const Expr& entry(std::size_t s, std::size_t t) const { return kernel_.at(s * target_->size() + t); }
  const std::vector<Expr>& entries() const noexcept { return kernel_; }

  Element apply(const Element& x) const;

  KernelOperator operator-() const;
  friend KernelOperator operator+(const KernelOperator& a, const KernelOperator& b);
  friend KernelOperator operator-(const KernelOperator& a, const KernelOperator& b);
  KernelOperator scaled(const Rational& c) const;

  /// Structural equality of the kernel tables.
  friend bool operator==(const KernelOperator& a, const KernelOperator& b);

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<Expr> kernel_;
};

Element eval_op(const KernelOperator& T, const Element& x);

bool vanishes_on(const Expr& e, std::span<const Rational> grid);

/// Kernels agree entrywise on the grid and the operators agree on every sample.
bool operators_agree(const KernelOperator& a, const KernelOperator& b, std::span<const Rational> grid,
                     std::span<const Element> samples = {});

struct PositivityWitness {
  std::size_t source_point;
  std::size_t target_point;
  Rational r;
  Rational value;
};

/// Semi-decision of T >= 0: a negative kernel value on the grid refutes it
/// (witness), otherwise the verdict is "positive on grid".
struct PositivityReport {
  bool positive_on_grid = true;
  std::size_t checks = 0;
  std::optional<PositivityWitness> witness;
};

PositivityReport check_positive(const KernelOperator& T, std::span<const Rational> grid);

enum class OperatorLatticeKind { join, meet, pos, neg, modulus };

struct BruteLattice {
  Element value;
  /// For each target point, the fragment y (of the decomposition x = y ⊔ (x−y))
  /// at which the extremum for that coordinate is attained.
  std::vector<Element> attained_at;
  std::size_t decompositions = 0;
};

/// Exact sup/inf over all disjoint decompositions of x:
///   (T∨S)(x) = sup{Ty + Sz : x = y⊔z},  (T∧S)(x) = inf{Ty + Sz : x = y⊔z},
///   T⁺(x) = sup{Ty : y ⊑ x},  T⁻(x) = −inf{Ty : y ⊑ x},  |T|(x) = (T∨(−T))(x).
/// `S` is required for join/meet. Throws CapExceeded when |supp(x)| > cap.
BruteLattice brute_lattice_detail(OperatorLatticeKind kind, const KernelOperator& T, const KernelOperator* S,
                                  const Element& x, std::size_t cap = kDefaultSupportCap);

Element brute_lattice_op(OperatorLatticeKind kind, const KernelOperator& T, const KernelOperator* S, const Element& x,
                         std::size_t cap = kDefaultSupportCap);

using ElementMap = std::function<Element(const Element&)>;

struct OaWitness {
  Element y;
  Element z;
  Element lhs;  // T(y + z)
  Element rhs;  // T(y) + T(z)
};

struct OaReport {
  bool passed = true;
  std::size_t checks = 0;
  std::optional<OaWitness> witness;
};

/// Tests T(y ⊔ z) = T(y) + T(z): first y = z = 0, then pairs of distinct
/// unit vectors, then `samples` random disjoint pairs.
OaReport check_oa(const ElementMap& T, const SpacePtr& source, std::size_t samples, std::uint64_t seed = 1);
OaReport check_oa(const KernelOperator& T, std::size_t samples, std::uint64_t seed = 1);

struct BoundWitness {
  Element x;
  Element image;
};

/// Searches x = c·box on the diagonal and axis rays, c = ±k/resolution
/// (k = 1..resolution, positive c first), for max_t |(Tx)_t| >= M.
/// Requires box >= 0.
std::optional<BoundWitness> order_bound_witness(const KernelOperator& T, const Element& box, const Rational& M,
                                                std::size_t resolution = 1000);

}  // namespace oac
