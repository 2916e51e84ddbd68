#include "oac/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "oac/error.hpp"

namespace oac {

Space::Space(std::vector<std::string> points, std::vector<Rational> weight, std::vector<Rational> finite_weight)
    : points_(std::move(points)), weight_(std::move(weight)), finite_weight_(std::move(finite_weight)) {
  if (points_.empty()) throw StructuralError("space must have at least one point");
  if (weight_.size() != points_.size() || finite_weight_.size() != points_.size())
    throw StructuralError("space weights must cover every point");
  std::set<std::string> seen;
  for (const auto& p : points_)
    if (!seen.insert(p).second) throw StructuralError("duplicate point identifier '" + p + "'");
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (weight_[i] <= 0 || finite_weight_[i] <= 0)
      throw StructuralError("weight of point '" + points_[i] + "' must be strictly positive");
}

SpacePtr Space::indexed(std::size_t n, int first) {
  std::vector<std::string> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(std::to_string(first + static_cast<int>(i)));
  return make(std::move(pts));
}

SpacePtr Space::make(std::vector<std::string> points) {
  const std::size_t n = points.size();
  return std::make_shared<const Space>(std::move(points), std::vector<Rational>(n, Rational(1)),
                                       std::vector<Rational>(n, Rational(1)));
}

std::optional<std::size_t> Space::find(const std::string& id) const {
  const auto it = std::find(points_.begin(), points_.end(), id);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::size_t Space::index_of(const std::string& id) const {
  if (auto i = find(id)) return *i;
  throw StructuralError("unknown point '" + id + "'");
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (!same_space(a, b)) throw StructuralError(std::string("space mismatch in ") + what);
}

// ---------------------------------------------------------------------------

PointSet PointSet::from_mask(std::size_t universe, std::uint64_t mask) {
  PointSet s(universe);
  for (std::size_t i = 0; i < universe && i < 64; ++i)
    if (mask >> i & 1U) s.bits_[i] = true;
  return s;
}

PointSet PointSet::from_indices(std::size_t universe, std::initializer_list<std::size_t> idx) {
  PointSet s(universe);
  for (auto i : idx) s.insert(i);
  return s;
}

PointSet PointSet::full(std::size_t universe) {
  PointSet s(universe);
  s.bits_.assign(universe, true);
  return s;
}

std::size_t PointSet::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<std::size_t> PointSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

std::uint64_t PointSet::mask() const {
  if (bits_.size() > 64) throw CapExceeded("point set too large for a 64-bit mask");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) m |= std::uint64_t{1} << i;
  return m;
}

PointSet PointSet::unite(const PointSet& o) const {
  PointSet r(universe());
  for (std::size_t i = 0; i < universe(); ++i) r.bits_[i] = bits_[i] || o.bits_.at(i);
  return r;
}

PointSet PointSet::intersect(const PointSet& o) const {
  PointSet r(universe());
  for (std::size_t i = 0; i < universe(); ++i) r.bits_[i] = bits_[i] && o.bits_.at(i);
  return r;
}

PointSet PointSet::complement() const {
  PointSet r(universe());
  for (std::size_t i = 0; i < universe(); ++i) r.bits_[i] = !bits_[i];
  return r;
}

bool PointSet::subset_of(const PointSet& o) const {
  for (std::size_t i = 0; i < universe(); ++i)
    if (bits_[i] && !o.bits_.at(i)) return false;
  return true;
}

std::string to_string(const PointSet& set, const Space& space) {
  std::string out = "{";
  bool first = true;
  for (auto i : set.indices()) {
    if (!first) out += ",";
    out += space.point(i);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

Element::Element(SpacePtr space, std::vector<Rational> values) : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw StructuralError("element without a space");
  if (values_.size() != space_->size())
    throw StructuralError("element has " + std::to_string(values_.size()) + " values but its space has " +
                          std::to_string(space_->size()) + " points");
}

Element Element::zero(SpacePtr space) {
  const auto n = space->size();
  return Element(std::move(space), std::vector<Rational>(n));
}

Element Element::constant(SpacePtr space, const Rational& r) {
  const auto n = space->size();
  return Element(std::move(space), std::vector<Rational>(n, r));
}

Element Element::unit(SpacePtr space, std::size_t i, const Rational& r) {
  Element e = zero(std::move(space));
  e.values_.at(i) = r;
  return e;
}

PointSet Element::support() const {
  PointSet s(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (values_[i] != 0) s.insert(i);
  return s;
}

bool Element::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

Element Element::restrict_to(const PointSet& carrier) const {
  if (carrier.universe() != size()) throw StructuralError("carrier does not match the element's space");
  std::vector<Rational> v(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (carrier.contains(i)) v[i] = values_[i];
  return Element(space_, std::move(v));
}

Element Element::operator-() const {
  std::vector<Rational> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = -values_[i];
  return Element(space_, std::move(v));
}

Element operator+(const Element& a, const Element& b) {
  require_same_space(a.space_, b.space_, "addition");
  std::vector<Rational> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a.values_[i] + b.values_[i];
  return Element(a.space_, std::move(v));
}

Element operator-(const Element& a, const Element& b) {
  require_same_space(a.space_, b.space_, "subtraction");
  std::vector<Rational> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a.values_[i] - b.values_[i];
  return Element(a.space_, std::move(v));
}

Element operator*(const Rational& c, const Element& a) {
  std::vector<Rational> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = c * a.values_[i];
  return Element(a.space_, std::move(v));
}

bool operator==(const Element& a, const Element& b) {
  return same_space(a.space_, b.space_) && a.values_ == b.values_;
}

std::string to_string(const Element& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += to_string(x[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------

namespace {

template <typename F>
Element zip(const Element& x, const Element& y, const char* what, F f) {
  require_same_space(x.space(), y.space(), what);
  std::vector<Rational> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = f(x[i], y[i]);
  return Element(x.space(), std::move(v));
}

template <typename F>
Element map(const Element& x, F f) {
  std::vector<Rational> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = f(x[i]);
  return Element(x.space(), std::move(v));
}

}  // namespace

Element join(const Element& x, const Element& y) { return zip(x, y, "join", max_of); }
Element meet(const Element& x, const Element& y) { return zip(x, y, "meet", min_of); }
Element abs(const Element& x) { return map(x, abs_value); }
Element pos(const Element& x) {
  return map(x, [](const Rational& v) { return v > 0 ? v : Rational(0); });
}
Element neg(const Element& x) {
  return map(x, [](const Rational& v) { return v < 0 ? Rational(-v) : Rational(0); });
}

Element lattice_op(LatticeKind kind, const Element& x, const Element* y) {
  switch (kind) {
    case LatticeKind::join:
    case LatticeKind::meet:
      if (!y) throw StructuralError("binary lattice operation needs two elements");
      return kind == LatticeKind::join ? join(x, *y) : meet(x, *y);
    case LatticeKind::abs: return abs(x);
    case LatticeKind::pos: return pos(x);
    case LatticeKind::neg: return neg(x);
  }
  throw StructuralError("unknown lattice operation");
}

bool leq(const Element& x, const Element& y) {
  require_same_space(x.space(), y.space(), "order comparison");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

bool is_positive(const Element& x) {
  return std::all_of(x.values().begin(), x.values().end(), [](const Rational& v) { return v >= 0; });
}

bool is_disjoint(const Element& x, const Element& y) {
  require_same_space(x.space(), y.space(), "disjointness test");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && y[i] != 0) return false;
  return true;
}

bool is_fragment(const Element& y, const Element& x) {
  if (!same_space(x.space(), y.space())) return false;
  return is_disjoint(y, x - y);
}

Element fragment_at(const Element& x, std::span<const std::size_t> support, std::uint64_t subset) {
  std::vector<Rational> v(x.size());
  for (std::size_t k = 0; k < support.size(); ++k)
    if (subset >> k & 1U) v[support[k]] = x[support[k]];
  return Element(x.space(), std::move(v));
}

std::vector<Element> fragments(const Element& x, std::size_t cap) {
  const auto support = x.support().indices();
  if (support.size() > cap || support.size() > 63)
    throw CapExceeded("support of size " + std::to_string(support.size()) + " exceeds the fragment cap " +
                      std::to_string(cap));
  const std::uint64_t count = std::uint64_t{1} << support.size();
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.push_back(fragment_at(x, support, m));
  return out;
}

Element fragment_bool_op(FragmentOp op, const Element& x, const Element& z, const Element* y) {
  if (!is_fragment(z, x)) throw PreconditionError(to_string(z) + " is not a fragment of " + to_string(x));
  if (op == FragmentOp::complement) return x - z;
  if (!y) throw StructuralError("binary fragment operation needs two fragments");
  if (!is_fragment(*y, x)) throw PreconditionError(to_string(*y) + " is not a fragment of " + to_string(x));
  if (op == FragmentOp::unite) return join(pos(z), pos(*y)) - join(neg(z), neg(*y));
  return meet(pos(z), pos(*y)) - meet(neg(z), neg(*y));
}

}  // namespace oac
