#pragma once

// Order projections (index subsets) and Boolean homomorphisms between
// projection algebras, represented by point maps acting through preimages.

#include <cstdint>
#include <string>
#include <vector>

#include "oac/lattice.hpp"

namespace oac {

class OrderProjection {
 public:
  OrderProjection(SpacePtr space, PointSet carrier);

  const SpacePtr& space() const noexcept { return space_; }
  const PointSet& carrier() const noexcept { return carrier_; }

  /// Multiplication by the indicator of the carrier.
  Element apply(const Element& x) const;

 private:
  SpacePtr space_;
  PointSet carrier_;
};

inline Element apply_projection(const OrderProjection& p, const Element& x) { return p.apply(x); }

/// π_x: projection onto the band generated by x.
OrderProjection support_projection(const Element& x);

/// Φ : 𝔅(source) → 𝔅(target), Φ(A) = { t : point_map(t) ∈ A }.
/// point_map runs target → source.
class BooleanHom {
 public:
  BooleanHom(SpacePtr source, SpacePtr target, std::vector<std::size_t> point_map);

  static BooleanHom identity(SpacePtr space);

  const SpacePtr& source() const noexcept { return source_; }
  const SpacePtr& target() const noexcept { return target_; }
  const std::vector<std::size_t>& point_map() const noexcept { return point_map_; }
  std::size_t operator()(std::size_t target_point) const { return point_map_.at(target_point); }

  /// Preimage of a source subset.
  PointSet apply(const PointSet& source_set) const;
  OrderProjection apply(const OrderProjection& p) const;

  bool is_isomorphism() const;
  /// Inverse homomorphism; throws PreconditionError unless bijective.
  BooleanHom inverse() const;

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<std::size_t> point_map_;
};

/// Throws StructuralError when A is not a subset of the source points.
PointSet hom_apply(const BooleanHom& h, const PointSet& source_set);

/// Hand-written set map 𝒫(source) → 𝒫(target), indexed by subset mask.
struct SetMapTable {
  SpacePtr source;
  SpacePtr target;
  std::vector<PointSet> image;  // image[mask] for every mask < 2^|source|
};

SetMapTable tabulate(const BooleanHom& h);

struct HomAxiomFailure {
  int axiom;  // 1: joins, 2: meets, 3: complements
  PointSet a;
  PointSet b;
  PointSet lhs;
  PointSet rhs;
};

struct HomCheckReport {
  bool passed = true;
  bool exhaustive = true;
  std::size_t checks = 0;
  std::vector<HomAxiomFailure> failures;
};

inline constexpr std::size_t kDefaultFullModeCap = 6;

/// Verifies Φ(A∪B)=Φ(A)∪Φ(B), Φ(A∩B)=Φ(A)∩Φ(B), Φ(Aᶜ)=Φ(A)ᶜ on all subset
/// pairs when |source| <= exhaustive_cap, otherwise on `samples` random pairs.
HomCheckReport hom_check(const BooleanHom& h, std::size_t exhaustive_cap = kDefaultFullModeCap,
                         std::size_t samples = 256, std::uint64_t seed = 1);
HomCheckReport hom_check(const SetMapTable& table);

}  // namespace oac
