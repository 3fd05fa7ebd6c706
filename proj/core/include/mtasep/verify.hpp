#pragma once

// Structural invariant suites shared by the CLI and the acceptance tests.
// Each suite either sweeps its full input space or samples it with a seed.

#include <cstdint>
#include <string>

#include "mtasep/config.hpp"

namespace mtasep::verify {

struct SuiteResult {
  bool ok = true;
  std::uint64_t cases = 0;
  std::string detail;  // first counterexample, when not ok
};

// reverse_step(forward_step(x, i)) == (x, i) over every stack and site.
SuiteResult bijection_exhaustive(int n_sites, int n_lines);
SuiteResult bijection_trials(int n_sites, int n_lines, long trials,
                             std::uint64_t seed);

// Exact global balance of the enumerated weights.
SuiteResult balance_instance(int n_sites, const Counts& p);

// Minimal-weight structure of the enumerated weights.
SuiteResult minimal_instance(int n_sites, const Counts& p);

// One bell acts on every assigned line as the adjacent sort at the cascade
// site, over every feasible stack and site.
SuiteResult commutation_exhaustive(int n_sites, int n_lines);
SuiteResult commutation_trials(int n_sites, int n_lines, long trials,
                               std::uint64_t seed);

// Collapse and queue-recurrence routes agree on every feasible
// arrival/service pair with up to max_classes arrival classes.
SuiteResult queue_equivalence_exhaustive(int n_sites, int max_classes);

// Serving the stripped departures with their own service process returns
// the departures, for every departure-shaped configuration.
SuiteResult queue_identity_exhaustive(int n_sites, int max_classes);

// On minimal departure configurations that preimage is the only one.
SuiteResult queue_uniqueness_exhaustive(int n_sites, int max_classes);

}  // namespace mtasep::verify
