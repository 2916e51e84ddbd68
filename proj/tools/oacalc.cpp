// oacalc: command-line front end for the operator calculus.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "oac/error.hpp"
#include "oac/suites.hpp"

namespace {

struct Options {
  std::vector<std::string> docs;
  std::string format = "human";
  std::string out;
  std::size_t grid = 201;
  std::size_t support_cap = 20;
  std::size_t full_cap = 6;
  std::size_t partition_cap = 6;
  std::uint64_t seed = 20190601;
  std::size_t samples = 20;
};

int emit(const oac::CommandResult& r, const Options& opt) {
  const std::string text = opt.format == "json" ? r.report.dump(2) + "\n" : r.human;
  if (opt.out.empty()) {
    (r.exit_code == oac::kExitInputError ? std::cerr : std::cout) << text;
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << opt.out << "'\n";
      return oac::kExitInputError;
    }
    f << text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oacalc: orthogonally additive and atomic operators on finite vector lattices"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  app.add_option("--doc", opt.docs, "Workspace document (JSON); repeatable for verify-all");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--out", opt.out, "Write the report to a file instead of stdout");
  app.add_option("--grid", opt.grid, "Sampling grid size (uniform on [-10, 10] plus probe points)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  app.add_option("--support-cap", opt.support_cap, "Largest support enumerated by fragment searches");
  app.add_option("--full-cap", opt.full_cap, "Largest source space for full-mode atomicity");
  app.add_option("--partition-cap", opt.partition_cap, "Largest source space for partition enumeration");
  app.add_option("--seed", opt.seed, "Seed for sampled checks");
  app.add_option("--samples", opt.samples, "Sampled elements per check");

  oac::CommandArgs args;
  std::string command;
  std::string suite = "all";
  auto value = [&](CLI::App* sub, const std::string& name, const std::string& help, bool required = false) {
    auto* o = sub->add_option_function<std::string>(
        "--" + name, [&args, name](const std::string& v) { args.values[name] = v; }, help);
    if (required) o->required();
  };

  auto* atomic = app.add_subcommand("check-atomic", "Decide T π = Φ(π) T for every order projection π");
  value(atomic, "op", "Operator", true);
  value(atomic, "hom", "Boolean homomorphism", true);
  value(atomic, "mode", "singleton|full");

  auto* project = app.add_subcommand("project", "Band projection R(T) onto the operators atomic subordinate to H");
  value(project, "op", "Positive operator", true);
  value(project, "hom", "Boolean homomorphism", true);
  project->add_flag("--verify-partitions", args.verify_partitions, "Compare with the minimum over all partitions");

  auto* lattice = app.add_subcommand("lattice", "Lattice operations on operators at a point");
  value(lattice, "kind", "join|meet|pos|neg|mod", true);
  value(lattice, "op", "Operator T", true);
  value(lattice, "op2", "Operator S (join, meet)");
  value(lattice, "at", "Element name or inline [..]", true);
  value(lattice, "hom", "Homomorphism for the pointwise formula (inferred when omitted)");
  lattice->add_flag("--oracle", args.oracle, "Also evaluate the sup/inf over all disjoint decompositions");

  auto* factor = app.add_subcommand("factor", "Factor an atomic T as T_N ∘ S_Φ");
  value(factor, "op", "Operator", true);
  value(factor, "hom", "Isomorphism", true);
  factor->add_option_function<std::size_t>(
      "--grid", [&args](std::size_t n) { args.grid_points = n; }, "Recovery grid size");

  auto* extend = app.add_subcommand("extend", "Minimal extension of a positive map from a lateral ideal");
  value(extend, "map", "Partial map, or an operator restricted to --ideal", true);
  value(extend, "ideal", "Lateral ideal");
  value(extend, "at", "Element name or inline [..]", true);
  value(extend, "hom", "Also check that the extension is atomic subordinate to this hom");

  auto* frags = app.add_subcommand("fragments", "Enumerate the fragments of an element");
  value(frags, "element", "Element name or inline [..]", true);
  value(frags, "space", "Space of an inline element (name or point count)");

  auto* metric = app.add_subcommand("metric", "Convergence-in-measure distance between two elements");
  value(metric, "f", "Element", true);
  value(metric, "g", "Element", true);
  value(metric, "space", "Space of inline elements (name or point count)");

  auto* verify = app.add_subcommand("verify-all", "Run the property suites and the checks recorded in documents");
  verify->add_option("--suite", suite, "Suite name, 'all' or 'workspaces'");

  for (auto* sub : app.get_subcommands({})) sub->callback([&command, sub] { command = sub->get_name(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return oac::kExitInputError;
  }

  oac::Config config;
  config.support_cap = opt.support_cap;
  config.full_mode_cap = opt.full_cap;
  config.partition_cap = opt.partition_cap;
  config.seed = opt.seed;
  config.grid = oac::sampling_grid(opt.grid);
  args.samples = opt.samples;

  std::vector<oac::Workspace> workspaces;
  try {
    for (const auto& path : opt.docs) workspaces.push_back(oac::load_workspace_file(path));
  } catch (const oac::Error& e) {
    return emit(oac::input_error(command, e.what()), opt);
  } catch (const std::exception& e) {
    return emit(oac::input_error(command, std::string("malformed document: ") + e.what()), opt);
  }

  if (command == "verify-all") return emit(oac::verify_all(suite, workspaces, config), opt);

  if (workspaces.size() > 1) return emit(oac::input_error(command, "exactly one --doc expected"), opt);
  const oac::Workspace ws = workspaces.empty() ? oac::Workspace{} : std::move(workspaces.front());
  return emit(oac::run_command(command, ws, args, config), opt);
}
