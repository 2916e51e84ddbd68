#pragma once

// Superposition (Nemytskii) operators, shift operators induced by Boolean
// homomorphisms, the convergence-in-measure metric, and the factorization
// T = T_N ∘ S_Φ of atomic operators.

#include <span>
#include <vector>

#include "oac/atomic.hpp"

namespace oac {

/// N(s, r) given per point as an expression in r; N(s, 0) = 0 for every s.
class SuperpositionKernel {
 public:
  SuperpositionKernel(SpacePtr space, std::vector<Expr> per_point);

  const SpacePtr& space() const noexcept { return space_; }
  const Expr& at(std::size_t s) const { return kernel_.at(s); }
  const std::vector<Expr>& entries() const noexcept { return kernel_; }

 private:
  SpacePtr space_;
  std::vector<Expr> kernel_;
};

/// T_N f = N(·, f(·)).
Element superpose(const SuperpositionKernel& N, const Element& f);

/// Linear shift S_Φ: (S_Φ f)(t) = f(point_map(t)).
class ShiftOperator {
 public:
  explicit ShiftOperator(BooleanHom hom) : hom_(std::move(hom)) {}
  const BooleanHom& hom() const noexcept { return hom_; }

  Element apply(const Element& f) const;
  /// S_{Φ⁻¹}; throws PreconditionError unless the point map is bijective.
  ShiftOperator inverse() const { return ShiftOperator(hom_.inverse()); }

 private:
  BooleanHom hom_;
};

inline Element shift_apply(const ShiftOperator& S, const Element& f) { return S.apply(f); }

/// Σ_s λ_s |f_s − g_s| / (1 + |f_s − g_s|), λ the space's finite weight.
Rational rho_metric(const Element& f, const Element& g);

/// T_N ∘ S_Φ in kernel form: entry (point_map(t), t) = N(t), zeros elsewhere.
KernelOperator compose(const SuperpositionKernel& N, const ShiftOperator& S);

struct FactorCheck {
  bool recovered_on_grid = true;   // N(t, r) = (T(r·1))(t) for every grid r
  bool identity_on_samples = true; // T f = N(·, S_Φ f(·))
  std::size_t grid_points = 0;
  std::size_t samples = 0;
  /// Largest |N(t, r_{k+1}) − N(t, r_k)| over neighbouring grid points: the
  /// sampled continuity indicator for N(t, ·).
  Rational max_neighbour_jump;
  std::string witness;
};

struct Factorization {
  SuperpositionKernel kernel;
  FactorCheck check;
};

/// Recovers N with N(t, r) = (T(r·1))(t) for T atomic subordinate to an
/// isomorphism h, and verifies the recovery on `grid` and the factorization
/// identity on `samples` (20 seeded samples when empty).
/// Throws PreconditionError when h is not an isomorphism or T is not atomic.
Factorization factor_atomic(const KernelOperator& T, const BooleanHom& h, std::span<const Rational> grid,
                            const Config& config = {}, std::span<const Element> samples = {});

}  // namespace oac
