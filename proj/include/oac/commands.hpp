#pragma once

// Command engine behind the CLI: each command takes a workspace plus string
// arguments and yields an exit code, a machine report and a human table.
//   exit 0  success / property holds
//   exit 1  mathematical failure (report carries a witness)
//   exit 2  input error (unresolved reference, parse failure, cap, precondition)

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oac/workspace.hpp"

namespace oac {

struct CommandArgs {
  /// Named string arguments: op, op2, hom, mode, kind, at, map, ideal,
  /// element, f, g, space, suite.
  std::map<std::string, std::string> values;
  bool verify_partitions = false;
  bool oracle = false;
  /// Grid size for `factor` (sampling_grid(n)); the config grid otherwise.
  std::optional<std::size_t> grid_points;
  std::size_t samples = 20;

  std::optional<std::string> get(const std::string& key) const;
  /// Throws StructuralError when missing.
  const std::string& require(const std::string& key) const;
};

/// Arguments recorded in a document check ({"op": "T", "oracle": true, ...}).
CommandArgs args_from_json(const Json& args);

struct CommandResult {
  int exit_code = 0;
  OrderedJson report;
  std::string human;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;

const std::vector<std::string>& command_names();

/// Runs one workspace command. Library errors become exit 2 reports.
CommandResult run_command(const std::string& command, const Workspace& ws, const CommandArgs& args,
                          const Config& config);

/// Error report for input failures that happen before a command runs.
CommandResult input_error(const std::string& command, const std::string& message);

}  // namespace oac
