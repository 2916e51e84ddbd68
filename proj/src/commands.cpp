#include "oac/commands.hpp"

#include <algorithm>
#include <sstream>

#include "oac/error.hpp"

namespace oac {

std::optional<std::string> CommandArgs::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

const std::string& CommandArgs::require(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw StructuralError("missing required argument --" + key);
  return it->second;
}

CommandArgs args_from_json(const Json& args) {
  CommandArgs out;
  if (!args.is_object()) throw StructuralError("check arguments must be an object");
  for (const auto& [key, v] : args.items()) {
    if (key == "verify-partitions" || key == "verify_partitions") {
      out.verify_partitions = v.get<bool>();
    } else if (key == "oracle") {
      out.oracle = v.get<bool>();
    } else if (key == "grid") {
      out.grid_points = v.get<std::size_t>();
    } else if (key == "samples") {
      out.samples = v.get<std::size_t>();
    } else if (v.is_string()) {
      out.values[key] = v.get<std::string>();
    } else {
      throw StructuralError("check argument '" + key + "' must be a string");
    }
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check-atomic", "project", "lattice", "factor",
                                              "extend",       "fragments", "metric"};
  return names;
}

namespace {

using Rows = std::vector<std::vector<std::string>>;

std::string table(const Rows& rows) {
  if (rows.empty()) return {};
  std::vector<std::size_t> width(rows.front().size(), 0);
  auto display_width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
      if ((c & 0xC0) != 0x80) ++w;
    return w;
  };
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], display_width(row[i]));
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      out << rows[r][i];
      if (i + 1 < rows[r].size()) out << std::string(width[i] - display_width(rows[r][i]) + 2, ' ');
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
    }
  }
  return out.str();
}

std::string set_string(const PointSet& set, const Space& space) { return to_string(set, space); }

OrderedJson kernel_json(const KernelOperator& T) {
  OrderedJson entries = OrderedJson::array();
  for (std::size_t s = 0; s < T.source()->size(); ++s)
    for (std::size_t t = 0; t < T.target()->size(); ++t) {
      const Expr& e = T.entry(s, t);
      if (e.is_literal_zero()) continue;
      entries.push_back({{"from", T.source()->point(s)}, {"to", T.target()->point(t)}, {"expr", print(e)}});
    }
  return entries;
}

std::string kernel_text(const KernelOperator& T) {
  Rows rows{{"from", "to", "expr"}};
  for (const auto& e : kernel_json(T))
    rows.push_back({e["from"].get<std::string>(), e["to"].get<std::string>(), e["expr"].get<std::string>()});
  if (rows.size() == 1) return "(zero kernel)\n";
  return table(rows);
}

OrderedJson hom_json(const BooleanHom& h) {
  OrderedJson map = OrderedJson::object();
  for (std::size_t t = 0; t < h.target()->size(); ++t) map[h.target()->point(t)] = h.source()->point(h(t));
  return map;
}

/// Named elements on `space`, in name order.
std::vector<std::pair<std::string, Element>> named_on(const Workspace& ws, const SpacePtr& space) {
  std::vector<std::pair<std::string, Element>> out;
  for (const auto& [name, x] : ws.elements)
    if (same_space(x.space(), space)) out.emplace_back(name, x);
  return out;
}

SpacePtr resolve_space_for(const Workspace& ws, const CommandArgs& args, const std::string& ref) {
  if (auto it = ws.elements.find(ref); it != ws.elements.end()) return it->second.space();
  if (auto sp = args.get("space")) {
    if (ws.spaces.count(*sp) || sp->empty() || !std::all_of(sp->begin(), sp->end(), ::isdigit)) return ws.space(*sp);
    // bare point count: points 0..n-1 with unit weights
    const std::size_t n = std::stoul(*sp);
    if (n == 0 || n > 64) throw StructuralError("--space must name a space or give 1..64 points");
    return Space::indexed(n);
  }
  if (ws.spaces.size() == 1) return ws.spaces.begin()->second;
  throw StructuralError("inline element '" + ref + "' needs --space");
}

OperatorLatticeKind lattice_kind(const std::string& k) {
  if (k == "join") return OperatorLatticeKind::join;
  if (k == "meet") return OperatorLatticeKind::meet;
  if (k == "pos") return OperatorLatticeKind::pos;
  if (k == "neg") return OperatorLatticeKind::neg;
  if (k == "mod" || k == "modulus") return OperatorLatticeKind::modulus;
  throw StructuralError("unknown lattice kind '" + k + "' (join|meet|pos|neg|mod)");
}

bool binary(OperatorLatticeKind k) { return k == OperatorLatticeKind::join || k == OperatorLatticeKind::meet; }

// ---------------------------------------------------------------------------

CommandResult check_atomic_cmd(const Workspace& ws, const CommandArgs& args, const Config& config) {
  const std::string op_name = args.require("op");
  const std::string hom_name = args.require("hom");
  const KernelOperator& T = ws.op(op_name);
  const BooleanHom& h = ws.hom(hom_name);
  const std::string mode_name = args.get("mode").value_or("singleton");
  AtomicMode mode;
  if (mode_name == "singleton") mode = AtomicMode::singleton;
  else if (mode_name == "full") mode = AtomicMode::full;
  else throw StructuralError("unknown mode '" + mode_name + "' (singleton|full)");

  const auto r = is_atomic(T, h, mode, config);
  const std::string message = (r.verdict ? "atomic subordinate to " : "not atomic subordinate to ") + hom_name;

  CommandResult out;
  out.exit_code = r.verdict ? kExitPass : kExitFailure;
  OrderedJson witnesses = OrderedJson::array();
  Rows rows{{"carrier", "x", "T(πx)", "Φ(π)Tx"}};
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"carrier", to_json(w.carrier, *T.source())},
                         {"element", to_json(w.element)},
                         {"left", to_json(w.left)},
                         {"right", to_json(w.right)}});
    rows.push_back({set_string(w.carrier, *T.source()), to_string(w.element), to_string(w.left), to_string(w.right)});
  }
  out.report = {{"command", "check-atomic"}, {"operator", op_name},  {"hom", hom_name},
                {"mode", mode_name},         {"grid_size", config.grid.size()},
                {"verdict", r.verdict},      {"checks", r.checks}, {"message", message},
                {"witnesses", witnesses}};
  out.human = message + " (" + mode_name + " mode, " + std::to_string(r.checks) + " checks)\n";
  if (!r.verdict) out.human += table(rows);
  return out;
}

CommandResult project_cmd(const Workspace& ws, const CommandArgs& args, const Config& config) {
  const std::string op_name = args.require("op");
  const std::string hom_name = args.require("hom");
  const KernelOperator& T = ws.op(op_name);
  const BooleanHom& h = ws.hom(hom_name);

  const auto named = named_on(ws, T.source());
  std::vector<Element> samples;
  for (const auto& [name, x] : named) samples.push_back(x);
  const BandMode mode = args.verify_partitions ? BandMode::brute : BandMode::closed_form;
  const auto bp = band_projection(T, h, mode, config, samples);

  CommandResult out;
  out.exit_code = bp.verified ? kExitPass : kExitFailure;
  out.report = {{"command", "project"},
                {"operator", op_name},
                {"hom", hom_name},
                {"mode", mode == BandMode::brute ? "brute" : "closed_form"},
                {"grid_size", config.grid.size()},
                {"result", kernel_json(bp.result)}};
  out.human = "R(" + op_name + ") relative to " + hom_name + ":\n" + kernel_text(bp.result);

  OrderedJson evals = OrderedJson::array();
  Rows erows{{"x", "Tx", "R(T)x"}};
  for (const auto& [name, x] : named) {
    const Element tx = T.apply(x);
    const Element rx = bp.result.apply(x);
    evals.push_back({{"element", name}, {"x", to_json(x)}, {"T", to_json(tx)}, {"R", to_json(rx)}});
    erows.push_back({name + " = " + to_string(x), to_string(tx), to_string(rx)});
  }
  out.report["evaluations"] = evals;
  if (!named.empty()) out.human += "\n" + table(erows);

  if (mode == BandMode::brute) {
    const auto partitions = set_partitions(T.source()->size());
    std::vector<Element> xs;
    for (const auto& row : bp.rows) xs.push_back(row.x);
    OrderedJson rows = OrderedJson::array();
    Rows hrows{{"x", "closed form", "min over partitions", "attaining", "singletons attain"}};
    for (const auto& row : bp.rows) {
      rows.push_back({{"x", to_json(row.x)},
                      {"closed_form", to_json(row.closed_form)},
                      {"partition_min", to_json(row.brute_min)},
                      {"attaining_partitions", row.attaining},
                      {"singleton_partition_attains", row.singleton_attains}});
      hrows.push_back({to_string(row.x), to_string(row.closed_form), to_string(row.brute_min),
                       std::to_string(row.attaining) + "/" + std::to_string(bp.partition_count),
                       row.singleton_attains ? "yes" : "no"});
    }
    out.report["partition_count"] = bp.partition_count;
    out.report["rows"] = rows;
    out.report["verified"] = bp.verified;
    out.human += "\npartition check (" + std::to_string(bp.partition_count) + " partitions):\n" + table(hrows);

    // Small spaces: show every partition's sum as well.
    if (partitions.size() <= 15) {
      OrderedJson per = OrderedJson::array();
      Rows prows{{"partition"}};
      for (const auto& x : xs) prows.front().push_back(to_string(x));
      for (const auto& p : partitions) {
        OrderedJson blocks = OrderedJson::array();
        std::string label;
        for (const auto& block : p) {
          OrderedJson b = OrderedJson::array();
          std::string bl;
          for (auto s : block) {
            b.push_back(T.source()->point(s));
            bl += (bl.empty() ? "" : ",") + T.source()->point(s);
          }
          blocks.push_back(b);
          label += "{" + bl + "}";
        }
        OrderedJson values = OrderedJson::array();
        std::vector<std::string> prow{label};
        for (const auto& x : xs) {
          const Element v = partition_sum(T, h, p, x);
          values.push_back(to_json(v));
          prow.push_back(to_string(v));
        }
        per.push_back({{"blocks", blocks}, {"values", values}});
        prows.push_back(std::move(prow));
      }
      out.report["partitions"] = per;
      out.human += "\n" + table(prows);
    }
    out.human += bp.verified ? "closed form equals the minimum over all partitions\n"
                             : "closed form differs from the partition minimum\n";
  }
  return out;
}

CommandResult lattice_cmd(const Workspace& ws, const CommandArgs& args, const Config& config) {
  const std::string kind_name = args.require("kind");
  const OperatorLatticeKind kind = lattice_kind(kind_name);
  const std::string op_name = args.require("op");
  const KernelOperator& T = ws.op(op_name);
  const KernelOperator* S = nullptr;
  std::string op2_name;
  if (binary(kind)) {
    op2_name = args.require("op2");
    S = &ws.op(op2_name);
    require_same_space(T.source(), S->source(), "lattice operands (source)");
    require_same_space(T.target(), S->target(), "lattice operands (target)");
  } else if (args.get("op2")) {
    throw StructuralError("--op2 is only used by join and meet");
  }
  const Element x = ws.element(args.require("at"), T.source());

  CommandResult out;
  out.report = {{"command", "lattice"}, {"kind", kind_name}, {"operator", op_name}};
  if (S) out.report["operator2"] = op2_name;
  out.report["at"] = to_json(x);
  std::string human = kind_name + " of " + op_name + (S ? " and " + op2_name : "") + " at x = " + to_string(x) + "\n";

  // Pointwise formula: needs one hom under which every operand is atomic.
  std::optional<BooleanHom> hom;
  std::string hom_label;
  std::string reason;
  std::vector<const KernelOperator*> ops{&T};
  if (S) ops.push_back(S);
  if (auto hn = args.get("hom")) {
    const BooleanHom& h = ws.hom(*hn);
    bool ok = true;
    for (const auto* op : ops) {
      const auto r = is_atomic(*op, h, AtomicMode::singleton, config);
      if (!r.verdict) {
        ok = false;
        const auto& w = r.witnesses.front();
        reason = "not atomic subordinate to " + *hn + ": carrier " + set_string(w.carrier, *op->source()) +
                 ", x = " + to_string(w.element) + ", T(πx) = " + to_string(w.left) +
                 ", Φ(π)Tx = " + to_string(w.right);
        break;
      }
    }
    if (ok) {
      hom = h;
      hom_label = *hn;
    }
  } else {
    hom = find_common_hom(ops, config);
    hom_label = "(inferred)";
    if (!hom) {
      std::vector<Rational> probes{1};
      probes.insert(probes.end(), config.grid.begin(), config.grid.end());
      for (std::size_t t = 0; t < T.target()->size() && reason.empty(); ++t) {
        std::vector<std::string> live;
        for (std::size_t s = 0; s < T.source()->size(); ++s)
          for (const auto* op : ops)
            if (!vanishes_on(op->entry(s, t), probes)) {
              live.push_back(T.source()->point(s));
              break;
            }
        if (live.size() > 1) {
          std::string list;
          for (const auto& p : live) list += (list.empty() ? "" : ",") + p;
          reason = "no common hom: target point " + T.target()->point(t) + " has live kernel entries from source points {" +
                   list + "}";
        }
      }
    }
  }

  std::optional<Element> pointwise;
  if (hom) {
    const KernelOperator R = pointwise_lattice_op(kind, T, S, *hom, config);
    pointwise = R.apply(x);
    out.report["pointwise_applicable"] = true;
    out.report["hom"] = hom_label;
    out.report["point_map"] = hom_json(*hom);
    out.report["pointwise_kernel"] = kernel_json(R);
    out.report["pointwise_value"] = to_json(*pointwise);
    human += "pointwise formula (hom " + hom_label + "): " + to_string(*pointwise) + "\n";
  } else {
    out.report["pointwise_applicable"] = false;
    out.report["reason"] = reason;
    human += "pointwise formula does not apply: " + reason + "\n";
  }

  std::optional<Element> oracle;
  if (args.oracle) {
    const auto b = brute_lattice_detail(kind, T, S, x, config.support_cap);
    oracle = b.value;
    OrderedJson attained = OrderedJson::array();
    Rows rows{{"target point", "value", "attained at y"}};
    if (S) rows.front().push_back("z = x - y");
    for (std::size_t t = 0; t < b.value.size(); ++t) {
      OrderedJson a = {{"point", T.target()->point(t)}, {"y", to_json(b.attained_at[t])}};
      rows.push_back({T.target()->point(t), to_string(b.value[t]), to_string(b.attained_at[t])});
      if (S) {
        const Element z = x - b.attained_at[t];
        a["z"] = to_json(z);
        rows.back().push_back(to_string(z));
      }
      attained.push_back(std::move(a));
    }
    out.report["oracle_value"] = to_json(b.value);
    out.report["oracle_attained_at"] = attained;
    out.report["decompositions"] = b.decompositions;
    human += "oracle (" + std::to_string(b.decompositions) + " decompositions): " + to_string(b.value) + "\n" +
             table(rows);
  }

  if (pointwise && oracle) {
    const bool agree = *pointwise == *oracle;
    out.report["agree"] = agree;
    out.exit_code = agree ? kExitPass : kExitFailure;
    human += agree ? "pointwise formula agrees with the oracle\n" : "pointwise formula DISAGREES with the oracle\n";
  } else if (!pointwise && !oracle) {
    out.exit_code = kExitFailure;
    human += "rerun with --oracle for the decomposition value\n";
  } else {
    out.exit_code = kExitPass;
  }
  out.human = human;
  return out;
}

CommandResult factor_cmd(const Workspace& ws, const CommandArgs& args, const Config& config) {
  const std::string op_name = args.require("op");
  const std::string hom_name = args.require("hom");
  const KernelOperator& T = ws.op(op_name);
  const BooleanHom& h = ws.hom(hom_name);
  const std::vector<Rational> grid = args.grid_points ? sampling_grid(*args.grid_points) : config.grid;

  std::vector<Element> samples;
  for (const auto& [name, x] : named_on(ws, T.source())) samples.push_back(x);
  Sampler sampler(config.seed);
  while (samples.size() < args.samples) samples.push_back(sampler.element(T.source()));

  const auto f = factor_atomic(T, h, grid, config, samples);
  const bool ok = f.check.recovered_on_grid && f.check.identity_on_samples;

  CommandResult out;
  out.exit_code = ok ? kExitPass : kExitFailure;
  OrderedJson N = OrderedJson::object();
  Rows rows{{"point", "N(point, r)"}};
  for (std::size_t s = 0; s < T.target()->size(); ++s) {
    N[T.target()->point(s)] = print(f.kernel.at(s));
    rows.push_back({T.target()->point(s), print(f.kernel.at(s))});
  }
  out.report = {{"command", "factor"},
                {"operator", op_name},
                {"hom", hom_name},
                {"kernel", N},
                {"grid_size", f.check.grid_points},
                {"samples", f.check.samples},
                {"recovered_on_grid", f.check.recovered_on_grid},
                {"identity_on_samples", f.check.identity_on_samples},
                {"max_neighbour_jump", to_string(f.check.max_neighbour_jump)}};
  if (!ok) out.report["witness"] = f.check.witness;
  out.human = op_name + " = T_N ∘ S_" + hom_name + " with\n" + table(rows) + "recovered on " +
              std::to_string(f.check.grid_points) + " grid points: " + (f.check.recovered_on_grid ? "yes" : "no") +
              "\nTf = N(·, S f(·)) on " + std::to_string(f.check.samples) +
              " samples: " + (f.check.identity_on_samples ? "yes" : "no") +
              "\nlargest neighbour jump on the grid: " + to_string(f.check.max_neighbour_jump) + "\n";
  if (!ok) out.human += "witness: " + f.check.witness + "\n";
  return out;
}

CommandResult extend_cmd(const Workspace& ws, const CommandArgs& args, const Config& config) {
  const std::string map_name = args.require("map");
  std::optional<PartialMap> built;
  if (auto ideal_name = args.get("ideal")) {
    if (ws.maps.count(map_name)) throw StructuralError("map '" + map_name + "' already has a domain; drop --ideal");
    built = PartialMap::restriction(ws.ideal(*ideal_name), ws.op(map_name));
  } else {
    built = ws.map(map_name);
  }
  const PartialMap& T = *built;
  const Element x = ws.element(args.require("at"), T.domain().space());
  const MinimalExtension ext(T, config);
  const Element value = ext(x);

  CommandResult out;
  OrderedJson admissible = OrderedJson::array();
  Rows rows{{"y ∈ F_x ∩ D", "Ty"}};
  for (const auto& y : fragments(x, config.support_cap)) {
    if (!T.domain().contains(y)) continue;
    const Element ty = T(y);
    admissible.push_back({{"y", to_json(y)}, {"value", to_json(ty)}});
    rows.push_back({to_string(y), to_string(ty)});
  }
  out.report = {{"command", "extend"},
                {"map", map_name},
                {"ideal_kind", to_string(T.domain().kind())},
                {"at", to_json(x)},
                {"value", to_json(value)},
                {"admissible_fragments", admissible}};
  out.human = "extension of " + map_name + " at x = " + to_string(x) + ": " + to_string(value) + "\n" + table(rows);
  if (admissible.empty()) out.human += "(no fragment of x lies in D; sup ∅ = 0)\n";
  out.exit_code = kExitPass;

  if (auto hn = args.get("hom")) {
    const auto r = extension_atomic_check(T, ws.hom(*hn), args.samples, config);
    OrderedJson checks = OrderedJson::array();
    for (const auto& c : r.details.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"checks", c.checks}, {"witness", c.witness}});
    out.report["atomic_check"] = {{"hom", *hn}, {"precondition_met", r.precondition_met}, {"passed", r.passed},
                                  {"checks", checks}};
    out.human += r.precondition_met ? (r.passed ? "extension is atomic subordinate to " + *hn + "\n"
                                                : "extension fails atomicity\n")
                                    : "precondition rejected: map is not atomic on D\n";
    if (!r.precondition_met) out.exit_code = kExitInputError;
    else if (!r.passed) out.exit_code = kExitFailure;
  }
  return out;
}

CommandResult fragments_cmd(const Workspace& ws, const CommandArgs& args, const Config& config) {
  const std::string ref = args.require("element");
  const Element x = ws.element(ref, resolve_space_for(ws, args, ref));
  const auto fs = fragments(x, config.support_cap);
  CommandResult out;
  OrderedJson list = OrderedJson::array();
  Rows rows{{"carrier", "fragment"}};
  const auto support = x.support();
  for (const auto& y : fs) {
    list.push_back(to_json(y));
    rows.push_back({set_string(y.support(), *x.space()), to_string(y)});
  }
  out.report = {{"command", "fragments"}, {"element", to_json(x)}, {"support", to_json(support, *x.space())},
                {"count", fs.size()}, {"fragments", list}};
  out.human = std::to_string(fs.size()) + " fragments of " + to_string(x) + "\n" + table(rows);
  return out;
}

CommandResult metric_cmd(const Workspace& ws, const CommandArgs& args, const Config&) {
  const std::string fr = args.require("f");
  const std::string gr = args.require("g");
  SpacePtr space;
  if (ws.elements.count(fr)) space = ws.named_element(fr).space();
  else if (ws.elements.count(gr)) space = ws.named_element(gr).space();
  else space = resolve_space_for(ws, args, fr);
  const Element f = ws.element(fr, space);
  const Element g = ws.element(gr, space);
  const Rational rho = rho_metric(f, g);
  CommandResult out;
  out.report = {{"command", "metric"}, {"f", to_json(f)}, {"g", to_json(g)}, {"rho", to_string(rho)}};
  out.human = "rho(" + to_string(f) + ", " + to_string(g) + ") = " + to_string(rho) + "\n";
  return out;
}

}  // namespace

CommandResult input_error(const std::string& command, const std::string& message) {
  CommandResult out;
  out.exit_code = kExitInputError;
  out.report = {{"command", command}, {"error", message}};
  out.human = "error: " + message + "\n";
  return out;
}

CommandResult run_command(const std::string& command, const Workspace& ws, const CommandArgs& args,
                          const Config& config) {
  try {
    if (command == "check-atomic") return check_atomic_cmd(ws, args, config);
    if (command == "project") return project_cmd(ws, args, config);
    if (command == "lattice") return lattice_cmd(ws, args, config);
    if (command == "factor") return factor_cmd(ws, args, config);
    if (command == "extend") return extend_cmd(ws, args, config);
    if (command == "fragments") return fragments_cmd(ws, args, config);
    if (command == "metric") return metric_cmd(ws, args, config);
    return input_error(command, "unknown command '" + command + "'");
  } catch (const Error& e) {
    return input_error(command, e.what());
  } catch (const std::exception& e) {
    return input_error(command, std::string("malformed argument: ") + e.what());
  }
}

}  // namespace oac
