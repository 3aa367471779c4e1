#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lk {

enum class CheckMode {
  required,          // must never fail
  expected_failure,  // must fail at least once (a refuted alternative)
  informational,     // reported only
};

struct CheckTally {
  std::string name;
  CheckMode mode = CheckMode::required;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;

  bool ok() const;
};

struct Failure {
  std::string check;
  std::uint64_t instance = 0;
  std::uint64_t seed = 0;
  std::string forest;  // forest document of the instance
  std::string context;  // blow-up site, if any
  std::string generator;
  std::string expected;
  std::string got;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int instances = 0;
  int margin = 0;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::vector<CheckTally> checks;
  std::vector<Failure> failures;   // required checks, capped
  std::vector<Failure> witnesses;  // expected and informational failures, capped
  std::vector<std::string> notes;
  double elapsed_seconds = 0;

  bool skip_ratio_ok() const;
  bool passed() const;
  const CheckTally* find(const std::string& check) const;
};

struct SuiteOptions {
  int instances = 25;
  int margin = 1;
  std::uint64_t seed = 1;
  int max_framed = 0;  // 0 = the suite's default
  int ucap = 3;        // fingerprint_invariance only
  std::size_t failure_cap = 25;
};

const std::vector<std::string>& suite_names();
int default_max_framed(const std::string& suite);

// Throws Error for unknown suite names. Failures are data, not exceptions.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

// Applies LATTICE_THREADS (if set) to the OpenMP runtime.
void apply_thread_limit();

}  // namespace lk
