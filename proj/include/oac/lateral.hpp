#pragma once

// Lateral ideals (subsets closed under fragments and disjoint sums), partial
// orthogonally additive maps defined on them, and the minimal extension
//   T̃_D x = sup { T y : y ∈ F_x ∩ D },  sup ∅ = 0.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oac/atomic.hpp"
#include "oac/random.hpp"

namespace oac {

enum class IdealKind { order_ideal, fragment_set, operator_kernel, explicit_list };

const char* to_string(IdealKind kind);

class LateralIdeal {
 public:
  /// Order ideal generated by `generators`: x ∈ D iff |x| <= c·g for some
  /// rational c, g = ∨|generator|.
  static LateralIdeal order_ideal(SpacePtr space, std::vector<Element> generators);
  /// F_anchor.
  static LateralIdeal fragment_set(Element anchor);
  /// ker(T) = { y : T y = 0 }.
  static LateralIdeal operator_kernel(KernelOperator T);
  static LateralIdeal explicit_list(SpacePtr space, std::vector<Element> members);

  IdealKind kind() const noexcept { return kind_; }
  const SpacePtr& space() const noexcept { return space_; }
  /// Generators, anchor, or members, depending on the kind.
  const std::vector<Element>& payload() const noexcept { return payload_; }
  const std::optional<KernelOperator>& op() const noexcept { return op_; }

  bool contains(const Element& x) const;

  /// Every member when D is known to be finite (fragment sets, explicit lists).
  std::optional<std::vector<Element>> members(std::size_t cap = kDefaultSupportCap) const;

  /// A random member, or nullopt when D is empty.
  std::optional<Element> sample_member(Sampler& sampler, const std::vector<Rational>& grid) const;

  /// Both lateral-ideal axioms: exhaustively over finite D, otherwise on
  /// sampled members. A sampled pass means "consistent", not proved.
  PropertyReport axiom_check(std::size_t samples, std::uint64_t seed, const std::vector<Rational>& grid) const;

 private:
  LateralIdeal(IdealKind kind, SpacePtr space, std::vector<Element> payload, std::optional<KernelOperator> op);
  void validate();

  IdealKind kind_;
  SpacePtr space_;
  std::vector<Element> payload_;
  std::optional<KernelOperator> op_;
  std::optional<Element> order_generator_;  // ∨|g_i| for order ideals
};

inline bool ideal_contains(const LateralIdeal& D, const Element& x) { return D.contains(x); }

/// A map T : D → F.
class PartialMap {
 public:
  PartialMap(LateralIdeal domain, SpacePtr target, ElementMap action);

  /// Restriction of a kernel operator to D.
  static PartialMap restriction(LateralIdeal domain, KernelOperator T);
  /// Value table; 0 ↦ 0 is implied. Members of D missing from the table are
  /// an error at evaluation time.
  static PartialMap table(LateralIdeal domain, SpacePtr target, std::vector<std::pair<Element, Element>> values);

  const LateralIdeal& domain() const noexcept { return domain_; }
  const SpacePtr& target() const noexcept { return target_; }

  /// Throws PreconditionError when y ∉ D.
  Element operator()(const Element& y) const;

 private:
  LateralIdeal domain_;
  SpacePtr target_;
  ElementMap action_;
};

/// Members used by the sample-based checks: every member of a finite D,
/// otherwise `samples` sampled members (always including 0).
std::vector<Element> check_members(const LateralIdeal& D, std::size_t samples, std::uint64_t seed,
                                   const std::vector<Rational>& grid);

/// Positivity, orthogonal additivity on disjoint member pairs and, with a
/// hom, T(π y) = Φ(π) T(y) for singleton projections π.
PropertyReport check_partial_map(const PartialMap& T, std::size_t samples, const Config& config,
                                 const BooleanHom* atomic_hom = nullptr);

class MinimalExtension {
 public:
  /// Sample-checks positivity of T on D (PreconditionError on failure).
  MinimalExtension(PartialMap T, const Config& config = {}, std::size_t samples = 64);

  /// Coordinatewise max of T y over y ∈ F_x ∩ D; 0 when that set is empty.
  /// Throws CapExceeded when |supp(x)| > config.support_cap.
  Element operator()(const Element& x) const;
  /// |F_x ∩ D|.
  std::size_t admissible_fragments(const Element& x) const;

  const PartialMap& base() const noexcept { return T_; }

 private:
  PartialMap T_;
  std::size_t cap_;
};

Element minimal_extension(const PartialMap& T, const Element& x, const Config& config = {});

struct ExtensionReport {
  bool precondition_met = true;
  bool passed = true;
  PropertyReport details;
};

/// Gate: T atomic on D (sampled members, singleton projections). Then the
/// extension is checked for T π = Φ(π) T on sampled elements and singleton
/// projections, and for agreement with T on D.
ExtensionReport extension_atomic_check(const PartialMap& T, const BooleanHom& h, std::size_t samples,
                                       const Config& config = {});

}  // namespace oac
