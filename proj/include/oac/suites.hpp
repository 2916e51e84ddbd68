#pragma once

// Seeded property suites and the verify-all driver. Every suite is a pure
// function of its counts, seed and config, so reports are reproducible.

#include <string>
#include <vector>

#include "oac/commands.hpp"

namespace oac {

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few only

  void fail(std::string what);
};

/// Operator with kernel[point_map(t)][t] drawn from the sampler (positive
/// expressions when `positive`) and zeros elsewhere; atomic subordinate to h.
KernelOperator random_atomic_operator(Sampler& sampler, const BooleanHom& h, bool positive = false, int depth = 2);
/// Every entry drawn independently; an entry is zero with probability `zero_prob`.
KernelOperator random_operator(Sampler& sampler, const SpacePtr& source, const SpacePtr& target, bool positive,
                               double zero_prob = 0.3, int depth = 2);

/// Pointwise lattice formulas against the decomposition oracle, all five kinds.
SuiteResult suite_lattice(std::size_t pairs, std::size_t elements_per_pair, std::size_t max_points,
                          std::uint64_t seed, const Config& config);
/// Closed-form band projection against every set partition, plus the R properties.
SuiteResult suite_band(std::size_t kernels, std::size_t samples, std::size_t points, std::uint64_t seed,
                       const Config& config);
/// factor_atomic(T_N ∘ S_Φ) recovers N on the grid and rebuilds T on samples.
SuiteResult suite_factor(std::size_t count, std::size_t samples, std::size_t max_points, std::uint64_t seed,
                         const Config& config);
/// Disjointness and fragment preservation of atomic operators.
SuiteResult suite_locality(std::size_t operators, std::size_t samples_per_operator, std::uint64_t seed,
                           const Config& config);
/// Minimal extensions of positive atomic partial maps on every ideal kind.
SuiteResult suite_extension(std::size_t maps_per_kind, std::size_t oa_pairs_per_map, std::uint64_t seed,
                            const Config& config);
/// A ↦ x|_A is a Boolean isomorphism onto F_x for |supp(x)| = 0..max_support.
SuiteResult suite_fragments(std::size_t max_support, std::uint64_t seed);
/// The 1/r² kernel is not order bounded; r is.
SuiteResult suite_order_bound();
/// parse(print(e)) = e on random expressions.
SuiteResult suite_kernel_lang(std::size_t count, std::uint64_t seed);

/// Suite names accepted by verify-all, in run order ("all" runs them all).
const std::vector<std::string>& suite_names();

/// Runs a named suite at the default verify-all size.
SuiteResult run_suite(const std::string& name, const Config& config);

/// verify-all: named suite(s) plus the checks recorded in each workspace.
CommandResult verify_all(const std::string& suite, const std::vector<Workspace>& workspaces, const Config& config);

}  // namespace oac
