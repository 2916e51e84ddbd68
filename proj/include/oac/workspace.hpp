#pragma once

// Workspace documents: named spaces, elements, operators, homomorphisms,
// superposition kernels, lateral ideals and partial maps in one JSON object.
//
//   {
//     "spaces":    { "S": { "points": ["a", "b"], "weight": ["1", "1"], "finite_weight": ["1/2", "1/2"] } },
//     "elements":  { "x": { "space": "S", "values": ["1", "-1/2"] } },
//     "operators": { "T": { "source": "S", "target": "S",
//                           "kernel": [ { "from": "a", "to": "b", "expr": "pow(r, 2)" } ] },
//                    "D": { "source": "S", "target": "S", "diagonal": ["r", "abs(r)"] },
//                    "C": { "compose": { "kernel": "N", "hom": "H" } } },
//     "homs":      { "H": { "source": "S", "target": "S", "map": { "a": "b", "b": "a" } } },
//     "kernels":   { "N": { "space": "S", "entries": { "a": "r", "b": "2*r" } } },
//     "ideals":    { "I": { "kind": "order_ideal", "space": "S", "generators": ["x"] },
//                    "F": { "kind": "fragment_set", "anchor": "x" },
//                    "K": { "kind": "operator_kernel", "operator": "T" },
//                    "E": { "kind": "explicit", "space": "S", "members": [["0", "0"]] } },
//     "maps":      { "P": { "ideal": "F", "operator": "T" },
//                    "Q": { "ideal": "E", "target": "S", "table": [ { "at": ["1", "0"], "value": ["3", "0"] } ] } },
//     "checks":    [ { "command": "check-atomic", "args": { "op": "T", "hom": "H" }, "expect": { "exit": 0 } } ]
//   }
//
// A hom map runs target point -> source point. Rationals are "p/q" or integer
// strings (JSON integers are accepted). Kernel entries not listed are 0.
// Elements are referenced by name or written inline as an array of rationals.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "oac/lateral.hpp"
#include "oac/superposition.hpp"

namespace oac {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// A check recorded in a document: run `command` with `args`, expect the exit
/// code and (optionally) report fields given by JSON pointer.
struct WorkspaceCheck {
  std::string command;
  Json args;
  int expect_exit = 0;
  Json expect_fields;  // { "/pointer": value, ... }
};

class Workspace {
 public:
  std::string name;

  std::map<std::string, SpacePtr> spaces;
  std::map<std::string, Element> elements;
  std::map<std::string, KernelOperator> operators;
  std::map<std::string, BooleanHom> homs;
  std::map<std::string, SuperpositionKernel> kernels;
  std::map<std::string, LateralIdeal> ideals;
  std::map<std::string, PartialMap> maps;
  std::vector<WorkspaceCheck> checks;

  /// Lookups throw StructuralError naming the unresolved reference.
  const SpacePtr& space(const std::string& id) const;
  const KernelOperator& op(const std::string& id) const;
  const BooleanHom& hom(const std::string& id) const;
  const SuperpositionKernel& kernel(const std::string& id) const;
  const LateralIdeal& ideal(const std::string& id) const;
  const PartialMap& map(const std::string& id) const;

  /// Named element, or inline "[1, -1/2]" / "1, -1/2" on `space`.
  Element element(const std::string& ref, const SpacePtr& space) const;
  /// Named element only (no space context available).
  const Element& named_element(const std::string& id) const;
};

/// Throws ParseError / StructuralError / PreconditionError on malformed input.
Workspace load_workspace(const Json& doc, std::string name = "workspace");
Workspace load_workspace_file(const std::string& path);

Rational json_rational(const Json& v);
Element parse_element(const std::string& text, const SpacePtr& space);

// Report encodings, mirroring the document format.
std::string json_rational_string(const Rational& q);
OrderedJson to_json(const Element& x);
OrderedJson to_json(const PointSet& set, const Space& space);

}  // namespace oac
