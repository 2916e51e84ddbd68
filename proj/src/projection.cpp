#include "oac/projection.hpp"

#include <random>

#include "oac/error.hpp"

namespace oac {

OrderProjection::OrderProjection(SpacePtr space, PointSet carrier) : space_(std::move(space)), carrier_(std::move(carrier)) {
  if (!space_ || carrier_.universe() != space_->size())
    throw StructuralError("projection carrier must be a subset of the space's points");
}

Element OrderProjection::apply(const Element& x) const {
  require_same_space(space_, x.space(), "order projection");
  return x.restrict_to(carrier_);
}

OrderProjection support_projection(const Element& x) { return OrderProjection(x.space(), x.support()); }

BooleanHom::BooleanHom(SpacePtr source, SpacePtr target, std::vector<std::size_t> point_map)
    : source_(std::move(source)), target_(std::move(target)), point_map_(std::move(point_map)) {
  if (!source_ || !target_) throw StructuralError("homomorphism needs source and target spaces");
  if (point_map_.size() != target_->size()) throw StructuralError("point map must be total on target points");
  for (auto s : point_map_)
    if (s >= source_->size()) throw StructuralError("point map refers to an unknown source point");
}

BooleanHom BooleanHom::identity(SpacePtr space) {
  std::vector<std::size_t> map(space->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return BooleanHom(space, space, std::move(map));
}

PointSet BooleanHom::apply(const PointSet& source_set) const {
  if (source_set.universe() != source_->size()) throw StructuralError("subset is not over the source points");
  PointSet out(target_->size());
  for (std::size_t t = 0; t < point_map_.size(); ++t)
    if (source_set.contains(point_map_[t])) out.insert(t);
  return out;
}

OrderProjection BooleanHom::apply(const OrderProjection& p) const {
  require_same_space(source_, p.space(), "homomorphism application");
  return OrderProjection(target_, apply(p.carrier()));
}

bool BooleanHom::is_isomorphism() const {
  if (source_->size() != target_->size()) return false;
  std::vector<bool> hit(source_->size(), false);
  for (auto s : point_map_) {
    if (hit[s]) return false;
    hit[s] = true;
  }
  return true;
}

BooleanHom BooleanHom::inverse() const {
  if (!is_isomorphism()) throw PreconditionError("homomorphism is not an isomorphism (point map not bijective)");
  std::vector<std::size_t> inv(point_map_.size());
  for (std::size_t t = 0; t < point_map_.size(); ++t) inv[point_map_[t]] = t;
  return BooleanHom(target_, source_, std::move(inv));
}

PointSet hom_apply(const BooleanHom& h, const PointSet& source_set) { return h.apply(source_set); }

SetMapTable tabulate(const BooleanHom& h) {
  const std::size_t n = h.source()->size();
  if (n > 20) throw CapExceeded("cannot tabulate a homomorphism on more than 20 source points");
  SetMapTable table{h.source(), h.target(), {}};
  table.image.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) table.image.push_back(h.apply(PointSet::from_mask(n, m)));
  return table;
}

namespace {

void check_pair(const PointSet& a, const PointSet& b, const PointSet& fa, const PointSet& fb, const PointSet& fab_join,
                const PointSet& fab_meet, const PointSet& fa_comp, HomCheckReport& report) {
  auto record = [&](int axiom, const PointSet& lhs, const PointSet& rhs) {
    ++report.checks;
    if (lhs != rhs) {
      report.passed = false;
      if (report.failures.size() < 16) report.failures.push_back({axiom, a, b, lhs, rhs});
    }
  };
  record(1, fab_join, fa.unite(fb));
  record(2, fab_meet, fa.intersect(fb));
  record(3, fa_comp, fa.complement());
}

}  // namespace

HomCheckReport hom_check(const SetMapTable& table) {
  const std::size_t n = table.source->size();
  const std::uint64_t count = std::uint64_t{1} << n;
  if (table.image.size() != count) throw StructuralError("set-map table must list an image for every source subset");
  for (const auto& img : table.image)
    if (img.universe() != table.target->size()) throw StructuralError("set-map image is not a target subset");
  HomCheckReport report;
  const std::uint64_t full = count - 1;
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = 0; b < count; ++b)
      check_pair(PointSet::from_mask(n, a), PointSet::from_mask(n, b), table.image[a], table.image[b],
                 table.image[a | b], table.image[a & b], table.image[full & ~a], report);
  return report;
}

HomCheckReport hom_check(const BooleanHom& h, std::size_t exhaustive_cap, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = h.source()->size();
  if (n <= exhaustive_cap && n <= 20) return hom_check(tabulate(h));
  HomCheckReport report;
  report.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  auto random_set = [&] {
    PointSet s(n);
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) s.insert(i);
    return s;
  };
  for (std::size_t k = 0; k < samples; ++k) {
    const PointSet a = random_set();
    const PointSet b = random_set();
    const PointSet fa = h.apply(a);
    const PointSet fb = h.apply(b);
    check_pair(a, b, fa, fb, h.apply(a.unite(b)), h.apply(a.intersect(b)), h.apply(a.complement()), report);
  }
  return report;
}

}  // namespace oac
