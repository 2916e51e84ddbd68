// Acceptance gate: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

#include "oac/suites.hpp"

namespace {

// Runtime ceilings, seconds.
constexpr double kLatticeBudget = 60.0;
constexpr double kBandBudget = 120.0;
constexpr double kFragmentBudget = 5.0;

// Exact arithmetic throughout: every comparison below has tolerance 0.

constexpr std::uint64_t kSeed = 20190601;

int failures = 0;

void line(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
std::pair<oac::SuiteResult, double> timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  oac::SuiteResult r = f();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return {std::move(r), dt.count()};
}

std::string summary(const oac::SuiteResult& r, double seconds) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cases, %zu exact checks, %.2f s", r.cases, r.checks, seconds);
  std::string out = buf;
  for (const auto& f : r.failures) out += "\n    " + f;
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main() {
  oac::Config config;
  config.seed = kSeed;

  {
    auto [r, t] = timed([&] { return oac::suite_lattice(1000, 3, 6, kSeed + 1, config); });
    line(1, "pointwise lattice formulas equal the decomposition oracle", r.passed && r.cases >= 1000 && t < kLatticeBudget,
         summary(r, t));
  }
  {
    auto [r, t] = timed([&] { return oac::suite_band(200, 20, 5, kSeed + 2, config); });
    line(2, "closed-form band projection equals the minimum over all 52 partitions; R properties",
         r.passed && r.cases >= 200 && oac::bell_number(5) == 52 && t < kBandBudget, summary(r, t));
  }
  {
    oac::Config c = config;
    c.grid = oac::uniform_grid(201, -10, 10);
    auto [r, t] = timed([&] { return oac::suite_factor(200, 50, 6, kSeed + 3, c); });
    line(3, "factorization T = T_N o S_Phi round trip on a 201-point grid", r.passed && r.cases >= 200,
         summary(r, t));
  }
  {
    auto [r, t] = timed([&] { return oac::suite_locality(100, 20, kSeed + 4, config); });
    // 100 operators x 20 samples: 2000 disjoint pairs and 2000 fragment checks
    line(4, "atomic operators preserve disjointness and fragments", r.passed && r.checks >= 2000, summary(r, t));
  }
  {
    auto [r, t] = timed([&] { return oac::suite_extension(100, 5, kSeed + 5, config); });
    // 3 kinds x 100 maps, 5 sampled disjoint pairs per map: 500 pairs per kind
    line(5, "minimal extension: extends T, orthogonally additive, atomic, sup of empty set is 0",
         r.passed && r.cases >= 301, summary(r, t));
  }
  {
    auto [r, t] = timed([&] { return oac::suite_fragments(8, kSeed + 6); });
    line(6, "A -> x|_A is a Boolean isomorphism for |supp x| <= 8", r.passed && t < kFragmentBudget, summary(r, t));
  }
  {
    auto [r, t] = timed([] { return oac::suite_order_bound(); });
    line(7, "1/r^2 witness [1/1000] -> [10^6]; linear kernel bounded", r.passed, summary(r, t));
  }
  {
    const std::string dir = OAC_ACCEPTANCE_OUT;
    std::string docs;
    for (const char* name : {"z4_shift", "two_point_r2", "coordinate_join", "superposition", "lateral"})
      docs += std::string(" --doc ") + OAC_WORKSPACE_DIR + "/" + name + ".json";
    int codes[2];
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const std::string out = dir + "/verify_all_" + std::to_string(run) + ".json";
      const std::string cmd = std::string(OAC_CLI_PATH) + " verify-all --format json --out " + out + docs;
      const int status = std::system(cmd.c_str());
      codes[run] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      outputs[run] = slurp(out);
    }
    const bool identical = !outputs[0].empty() && outputs[0] == outputs[1];
    line(8, "verify-all is deterministic and passes", identical && codes[0] == 0 && codes[1] == 0,
         "exit codes " + std::to_string(codes[0]) + ", " + std::to_string(codes[1]) + "; " +
             std::to_string(outputs[0].size()) + " report bytes, " + (identical ? "identical" : "DIFFERENT"));
  }

  std::printf("%s\n", failures == 0 ? "all acceptance criteria pass" : "acceptance criteria FAILED");
  return failures == 0 ? 0 : 1;
}
