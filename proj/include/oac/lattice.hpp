#pragma once

// Finite vector-lattice model E = Q^S over a discrete measure space.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oac/rational.hpp"

namespace oac {

/// Finite point set carrying a measure (weight) and an equivalent finite
/// measure (finite_weight). Points are referred to by index internally.
class Space {
 public:
  Space(std::vector<std::string> points, std::vector<Rational> weight, std::vector<Rational> finite_weight);

  /// Points "first", "first+1", ... with unit weights.
  static std::shared_ptr<const Space> indexed(std::size_t n, int first = 0);
  static std::shared_ptr<const Space> make(std::vector<std::string> points);

  std::size_t size() const noexcept { return points_.size(); }
  const std::string& point(std::size_t i) const { return points_.at(i); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const Rational& weight(std::size_t i) const { return weight_.at(i); }
  const Rational& finite_weight(std::size_t i) const { return finite_weight_.at(i); }

  /// Index of a point identifier; throws StructuralError when unknown.
  std::size_t index_of(const std::string& id) const;
  std::optional<std::size_t> find(const std::string& id) const;

  friend bool operator==(const Space& a, const Space& b) { return a.points_ == b.points_; }

 private:
  std::vector<std::string> points_;
  std::vector<Rational> weight_;
  std::vector<Rational> finite_weight_;
};

using SpacePtr = std::shared_ptr<const Space>;

bool same_space(const SpacePtr& a, const SpacePtr& b);
/// Throws StructuralError naming `what` when the spaces differ.
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

/// Subset of the points of one space.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : bits_(universe, false) {}
  static PointSet from_mask(std::size_t universe, std::uint64_t mask);
  static PointSet from_indices(std::size_t universe, std::initializer_list<std::size_t> idx);
  static PointSet full(std::size_t universe);

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(std::size_t i) const { return bits_.at(i); }
  void insert(std::size_t i) { bits_.at(i) = true; }
  void erase(std::size_t i) { bits_.at(i) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> indices() const;
  /// Only valid for universe <= 64.
  std::uint64_t mask() const;

  PointSet unite(const PointSet& o) const;
  PointSet intersect(const PointSet& o) const;
  PointSet complement() const;
  bool subset_of(const PointSet& o) const;
  bool disjoint_from(const PointSet& o) const { return intersect(o).empty(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<bool> bits_;
};

std::string to_string(const PointSet& set, const Space& space);

/// Exact-rational vector indexed by the points of a space.
class Element {
 public:
  Element(SpacePtr space, std::vector<Rational> values);

  static Element zero(SpacePtr space);
  static Element constant(SpacePtr space, const Rational& r);
  static Element unit(SpacePtr space, std::size_t i, const Rational& r = 1);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Rational>& values() const noexcept { return values_; }

  PointSet support() const;
  bool is_zero() const;
  /// Coordinates outside `carrier` set to zero.
  Element restrict_to(const PointSet& carrier) const;

  Element operator-() const;
  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator*(const Rational& c, const Element& a);

  friend bool operator==(const Element& a, const Element& b);

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

std::string to_string(const Element& x);

enum class LatticeKind { join, meet, abs, pos, neg };

Element join(const Element& x, const Element& y);
Element meet(const Element& x, const Element& y);
Element abs(const Element& x);
Element pos(const Element& x);
Element neg(const Element& x);

/// Dispatcher over the coordinatewise lattice operations; `y` is required
/// for join/meet and ignored otherwise.
Element lattice_op(LatticeKind kind, const Element& x, const Element* y = nullptr);

/// Coordinatewise order x <= y.
bool leq(const Element& x, const Element& y);
bool is_positive(const Element& x);

/// |x| ∧ |y| = 0, i.e. disjoint supports.
bool is_disjoint(const Element& x, const Element& y);

/// y ⊑ x : y ⊥ (x - y).
bool is_fragment(const Element& y, const Element& x);

inline constexpr std::size_t kDefaultSupportCap = 20;

/// Restriction of x to the support subset selected by the bits of `subset`
/// (bit i refers to the i-th point of supp(x) in index order).
Element fragment_at(const Element& x, std::span<const std::size_t> support, std::uint64_t subset);

/// All 2^|supp(x)| fragments, ordered by subset mask over supp(x).
/// Throws CapExceeded when |supp(x)| > cap.
std::vector<Element> fragments(const Element& x, std::size_t cap = kDefaultSupportCap);

enum class FragmentOp { unite, intersect, complement };

/// Boolean operations on F_x:
///   z ∪ y = (z⁺ ∨ y⁺) − (z⁻ ∨ y⁻),  z ∩ y = (z⁺ ∧ y⁺) − (z⁻ ∧ y⁻),  z̄ = x − z.
/// Throws PreconditionError when an argument is not a fragment of x.
Element fragment_bool_op(FragmentOp op, const Element& x, const Element& z, const Element* y = nullptr);

}  // namespace oac
