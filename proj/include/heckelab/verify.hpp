#pragma once
// Named verification sweeps shared by the CLI and the test harness, so the
// two can never drift apart.  Each suite returns per-case accounting; a case
// that would exceed the budget is counted as skipped, never as passed.

#include <cstdint>
#include <string>
#include <vector>

#include "heckelab/errors.hpp"

namespace hecke {

struct SuiteResult {
  std::string suite;
  long long cases = 0, passed = 0, failed = 0, skipped = 0;
  std::vector<std::string> details;  // one line per failure or skip
  double seconds = 0;
  bool ok() const { return cases > 0 && failed == 0; }
};

struct SuiteConfig {
  std::vector<long long> pset = {2, 3};
  int lmax = 3;
  int kmax = 4;
  long long p = 2;       // prime for the single-prime suites
  uint64_t seed = 12345;
  Budget budget;
};

// detsa        stabilizer determinant image = predicted filtration step
// cor47        orbit count inside the full orbit = unit-index formula
// surjectivity entry-bounded integral matrices generate the finite groups
// commute      images of different primes commute in the global ring
// noncommute   a local pair with unequal products, shuffle-stable
// eta-mult     fiber map: multiplicative, injective, degree-preserving
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

} // namespace hecke
