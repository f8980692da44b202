#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lie_cubics {

/// Outcome of one named invariant check. `measured` and `threshold` give the
/// quantitative reading behind `pass`; `detail` says what was measured.
struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct CheckOptions {
  uint64_t seed = 0;
  /// Upper bound on worker threads; 0 means hardware concurrency. The caller
  /// (CLI) additionally honors the LIE_CUBICS_THREADS environment variable.
  int max_threads = 0;
};

/// Runs the full invariant suite: algebra identities, conservation laws,
/// symplecticity and convergence-order measurements, and the planner's
/// gradient and momentum-kick structure. Results come back in a fixed order
/// independent of scheduling; per-check RNG streams depend only on the seed
/// and the check name.
std::vector<CheckResult> run_check_suite(const CheckOptions& options);

}  // namespace lie_cubics
