#include "oac/workspace.hpp"

#include <fstream>
#include <sstream>

#include "oac/error.hpp"

namespace oac {

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) throw StructuralError(std::string("unresolved ") + what + " reference '" + id + "'");
  return it->second;
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw StructuralError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw StructuralError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string point_id(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw StructuralError(where + ": point identifiers must be strings");
}

std::vector<Rational> rational_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw StructuralError(where + ": expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& q : v) out.push_back(json_rational(q));
  return out;
}

Element element_value(const Workspace& ws, const Json& v, const SpacePtr& space, const std::string& where) {
  if (v.is_string()) return ws.element(v.get<std::string>(), space);
  Element x(space, rational_list(v, where));
  return x;
}

Expr expression(const Json& v, const std::string& where) {
  if (!v.is_string()) throw StructuralError(where + ": expressions must be strings");
  try {
    return parse_expr(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what() + " in \"" + v.get<std::string>() + "\"", e.position());
  }
}

SpacePtr load_space(const Json& def, const std::string& where) {
  std::vector<std::string> points;
  if (def.contains("points")) {
    for (const auto& p : field(def, "points", where)) points.push_back(point_id(p, where));
  } else {
    const Json& size = field(def, "size", where);
    if (!size.is_number_unsigned() || size.get<std::size_t>() == 0)
      throw StructuralError(where + ": size must be a positive integer");
    const long first = def.value("first", 0L);
    for (std::size_t i = 0; i < size.get<std::size_t>(); ++i) points.push_back(std::to_string(first + static_cast<long>(i)));
  }
  const std::size_t n = points.size();
  std::vector<Rational> weight = def.contains("weight") ? rational_list(def.at("weight"), where)
                                                         : std::vector<Rational>(n, Rational(1));
  std::vector<Rational> finite = def.contains("finite_weight") ? rational_list(def.at("finite_weight"), where)
                                                                : std::vector<Rational>(n, Rational(1));
  return std::make_shared<const Space>(std::move(points), std::move(weight), std::move(finite));
}

}  // namespace

Rational json_rational(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("rationals must be written as \"p/q\" strings or integers", 0);
}

std::string json_rational_string(const Rational& q) { return to_string(q); }

Element parse_element(const std::string& text, const SpacePtr& space) {
  std::string body = text;
  auto first = body.find_first_not_of(" \t");
  auto last = body.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParseError("empty element", 0);
  body = body.substr(first, last - first + 1);
  if (body.front() == '[') {
    if (body.back() != ']') throw ParseError("unterminated element literal", body.size());
    body = body.substr(1, body.size() - 2);
  }
  std::vector<Rational> values;
  std::stringstream ss(body);
  std::string item;
  std::size_t offset = 0;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    const std::string token = b == std::string::npos ? std::string() : item.substr(b, e - b + 1);
    try {
      values.push_back(parse_rational(token));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad element entry '") + item + "'", offset + e.position());
    }
    offset += item.size() + 1;
  }
  if (values.size() != space->size())
    throw StructuralError("element has " + std::to_string(values.size()) + " entries, space has " +
                          std::to_string(space->size()) + " points");
  return Element(space, std::move(values));
}

OrderedJson to_json(const Element& x) {
  OrderedJson out = OrderedJson::array();
  for (const auto& q : x.values()) out.push_back(to_string(q));
  return out;
}

OrderedJson to_json(const PointSet& set, const Space& space) {
  OrderedJson out = OrderedJson::array();
  for (std::size_t i : set.indices()) out.push_back(space.point(i));
  return out;
}

const SpacePtr& Workspace::space(const std::string& id) const { return lookup(spaces, id, "space"); }
const KernelOperator& Workspace::op(const std::string& id) const { return lookup(operators, id, "operator"); }
const BooleanHom& Workspace::hom(const std::string& id) const { return lookup(homs, id, "hom"); }
const SuperpositionKernel& Workspace::kernel(const std::string& id) const { return lookup(kernels, id, "kernel"); }
const LateralIdeal& Workspace::ideal(const std::string& id) const { return lookup(ideals, id, "ideal"); }
const PartialMap& Workspace::map(const std::string& id) const { return lookup(maps, id, "map"); }
const Element& Workspace::named_element(const std::string& id) const { return lookup(elements, id, "element"); }

Element Workspace::element(const std::string& ref, const SpacePtr& space) const {
  auto it = elements.find(ref);
  if (it != elements.end()) {
    require_same_space(space, it->second.space(), ("element '" + ref + "'").c_str());
    return it->second;
  }
  const auto c = ref.find_first_not_of(" \t");
  if (c != std::string::npos && (ref[c] == '[' || ref[c] == '-' || std::isdigit(static_cast<unsigned char>(ref[c]))))
    return parse_element(ref, space);
  throw StructuralError("unresolved element reference '" + ref + "'");
}

Workspace load_workspace(const Json& doc, std::string name) {
  if (!doc.is_object()) throw StructuralError("workspace document must be a JSON object");
  static const char* const known[] = {"spaces", "elements", "operators", "homs", "kernels", "ideals", "maps", "checks", "description"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw StructuralError("unknown top-level section '" + key + "'");
  }
  Workspace ws;
  ws.name = std::move(name);
  auto section = [&](const char* key) -> Json {
    if (!doc.contains(key)) return Json::object();
    if (!doc.at(key).is_object()) throw StructuralError(std::string("section '") + key + "' must be an object");
    return doc.at(key);
  };

  const Json spaces_section = section("spaces");
  for (const auto& [id, def] : spaces_section.items()) ws.spaces.emplace(id, load_space(def, "space '" + id + "'"));

  const Json elements_section = section("elements");
  for (const auto& [id, def] : elements_section.items()) {
    const std::string where = "element '" + id + "'";
    const SpacePtr& space = ws.space(string_field(def, "space", where));
    ws.elements.emplace(id, Element(space, rational_list(field(def, "values", where), where)));
  }

  const Json homs_section = section("homs");
  for (const auto& [id, def] : homs_section.items()) {
    const std::string where = "hom '" + id + "'";
    const SpacePtr& source = ws.space(string_field(def, "source", where));
    const SpacePtr& target = ws.space(string_field(def, "target", where));
    const Json& table = field(def, "map", where);
    if (!table.is_object()) throw StructuralError(where + ": map must be an object target point -> source point");
    std::vector<std::optional<std::size_t>> pm(target->size());
    for (const auto& [t, s] : table.items()) pm[target->index_of(t)] = source->index_of(point_id(s, where));
    std::vector<std::size_t> point_map;
    for (std::size_t t = 0; t < pm.size(); ++t) {
      if (!pm[t]) throw StructuralError(where + ": map is not total, target point '" + target->point(t) + "' is missing");
      point_map.push_back(*pm[t]);
    }
    ws.homs.emplace(id, BooleanHom(source, target, std::move(point_map)));
  }

  const Json kernels_section = section("kernels");
  for (const auto& [id, def] : kernels_section.items()) {
    const std::string where = "kernel '" + id + "'";
    const SpacePtr& space = ws.space(string_field(def, "space", where));
    const Json& entries = field(def, "entries", where);
    std::vector<std::optional<Expr>> per(space->size());
    if (entries.is_array()) {
      if (entries.size() != space->size()) throw StructuralError(where + ": one expression per point required");
      for (std::size_t s = 0; s < space->size(); ++s) per[s] = expression(entries[s], where);
    } else if (entries.is_object()) {
      for (const auto& [p, e] : entries.items()) per[space->index_of(p)] = expression(e, where);
    } else {
      throw StructuralError(where + ": entries must be an array or an object");
    }
    std::vector<Expr> exprs;
    for (std::size_t s = 0; s < per.size(); ++s) {
      if (!per[s]) throw StructuralError(where + ": no expression for point '" + space->point(s) + "'");
      exprs.push_back(*per[s]);
    }
    ws.kernels.emplace(id, SuperpositionKernel(space, std::move(exprs)));
  }

  const Json operators_section = section("operators");
  for (const auto& [id, def] : operators_section.items()) {
    const std::string where = "operator '" + id + "'";
    if (def.contains("compose")) {
      const Json& c = def.at("compose");
      const auto& N = ws.kernel(string_field(c, "kernel", where));
      const auto& h = ws.hom(string_field(c, "hom", where));
      ws.operators.emplace(id, compose(N, ShiftOperator(h)));
      continue;
    }
    const SpacePtr& source = ws.space(string_field(def, "source", where));
    const SpacePtr& target = ws.space(string_field(def, "target", where));
    std::vector<Expr> kernel(source->size() * target->size());
    std::vector<bool> seen(kernel.size(), false);
    if (def.contains("diagonal")) {
      if (!same_space(source, target)) throw StructuralError(where + ": diagonal operators need source = target");
      const Json& diag = def.at("diagonal");
      if (!diag.is_array() || diag.size() != source->size())
        throw StructuralError(where + ": diagonal needs one expression per point");
      for (std::size_t s = 0; s < source->size(); ++s) {
        kernel[s * target->size() + s] = expression(diag[s], where);
        seen[s * target->size() + s] = true;
      }
    }
    if (def.contains("kernel")) {
      for (const auto& entry : def.at("kernel")) {
        const std::size_t s = source->index_of(point_id(field(entry, "from", where), where));
        const std::size_t t = target->index_of(point_id(field(entry, "to", where), where));
        const std::size_t k = s * target->size() + t;
        if (seen[k])
          throw StructuralError(where + ": duplicate kernel entry (" + source->point(s) + ", " + target->point(t) + ")");
        seen[k] = true;
        kernel[k] = expression(field(entry, "expr", where), where);
      }
    }
    try {
      ws.operators.emplace(id, KernelOperator(source, target, std::move(kernel)));
    } catch (const StructuralError& e) {
      throw StructuralError(where + ": " + e.what());
    }
  }

  const Json ideals_section = section("ideals");
  for (const auto& [id, def] : ideals_section.items()) {
    const std::string where = "ideal '" + id + "'";
    const std::string kind = string_field(def, "kind", where);
    if (kind == "order_ideal") {
      const SpacePtr& space = ws.space(string_field(def, "space", where));
      std::vector<Element> gens;
      for (const auto& g : field(def, "generators", where)) gens.push_back(element_value(ws, g, space, where));
      ws.ideals.emplace(id, LateralIdeal::order_ideal(space, std::move(gens)));
    } else if (kind == "fragment_set") {
      const Json& a = field(def, "anchor", where);
      if (a.is_string() && !def.contains("space")) {
        ws.ideals.emplace(id, LateralIdeal::fragment_set(ws.named_element(a.get<std::string>())));
      } else {
        const SpacePtr& space = ws.space(string_field(def, "space", where));
        ws.ideals.emplace(id, LateralIdeal::fragment_set(element_value(ws, a, space, where)));
      }
    } else if (kind == "operator_kernel") {
      ws.ideals.emplace(id, LateralIdeal::operator_kernel(ws.op(string_field(def, "operator", where))));
    } else if (kind == "explicit") {
      const SpacePtr& space = ws.space(string_field(def, "space", where));
      std::vector<Element> members;
      for (const auto& m : field(def, "members", where)) members.push_back(element_value(ws, m, space, where));
      ws.ideals.emplace(id, LateralIdeal::explicit_list(space, std::move(members)));
    } else {
      throw StructuralError(where + ": unknown kind '" + kind + "'");
    }
  }

  const Json maps_section = section("maps");
  for (const auto& [id, def] : maps_section.items()) {
    const std::string where = "map '" + id + "'";
    const LateralIdeal& D = ws.ideal(string_field(def, "ideal", where));
    if (def.contains("operator")) {
      ws.maps.emplace(id, PartialMap::restriction(D, ws.op(string_field(def, "operator", where))));
      continue;
    }
    const SpacePtr& target = ws.space(string_field(def, "target", where));
    std::vector<std::pair<Element, Element>> table;
    for (const auto& row : field(def, "table", where)) {
      Element at = element_value(ws, field(row, "at", where), D.space(), where);
      if (!D.contains(at)) throw PreconditionError(where + ": table argument " + to_string(at) + " is not in the ideal");
      table.emplace_back(std::move(at), element_value(ws, field(row, "value", where), target, where));
    }
    ws.maps.emplace(id, PartialMap::table(D, target, std::move(table)));
  }

  if (doc.contains("checks")) {
    for (const auto& c : doc.at("checks")) {
      WorkspaceCheck check;
      check.command = string_field(c, "command", "check");
      check.args = c.value("args", Json::object());
      const Json expect = c.value("expect", Json::object());
      check.expect_exit = expect.value("exit", 0);
      check.expect_fields = expect.value("fields", Json::object());
      ws.checks.push_back(std::move(check));
    }
  }
  return ws;
}

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open document '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  return load_workspace(doc, name);
}

}  // namespace oac
