#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace divalg {

/// Outcome of one sampled or exhaustive invariant check.
struct CheckResult {
  std::string suite;
  std::string name;
  long passed = 0;
  long total = 0;
  /// First failing sample, empty when every sample passed.
  std::string counterexample;
  /// Wall time; not part of the deterministic report.
  double seconds = 0;

  bool ok() const { return total > 0 && passed == total; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Multiplies every sample count (exhaustive sweeps are unaffected).
  double scale = 1.0;
  /// Worker threads; 0 means the hardware concurrency.
  unsigned threads = 0;
  /// Numerator and denominator bound for random climb inputs.
  long climb_height = 1000;
};

/// fields, quat, rotations, maxsub, lemmas, cyclic.
const std::vector<std::string>& suite_names();

/// Check names of one suite, in report order.
std::vector<std::string> check_names(std::string_view suite);

/// Runs one suite, or every suite for "all". Checks fan out across worker
/// threads; each check draws from its own generator seeded from (seed,
/// suite, check), so results do not depend on scheduling. Throws
/// std::invalid_argument for unknown suites.
std::vector<CheckResult> run_suite(std::string_view suite, const SuiteOptions& opt = {});

/// Runs a single named check.
CheckResult run_check(std::string_view suite, std::string_view name, const SuiteOptions& opt = {});

}  // namespace divalg
