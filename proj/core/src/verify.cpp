#include "mtasep/verify.hpp"

#include <map>
#include <sstream>

#include "mtasep/exact.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/queue.hpp"
#include "mtasep/rng.hpp"

namespace mtasep::verify {

namespace {

using multiline::MultiLineRing;

std::string join_codes(const std::vector<int>& codes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < codes.size(); ++i)
    os << (i ? "," : "") << codes[i];
  return os.str();
}

// All 2^(lines * sites) stacks, as bitmask decodes.
template <typename Visit>
void for_each_stack(int n_sites, int n_lines, Visit&& visit) {
  std::uint64_t bits = static_cast<std::uint64_t>(n_sites) * n_lines;
  std::vector<int> flat(static_cast<std::size_t>(bits));
  for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
    for (std::uint64_t b = 0; b < bits; ++b)
      flat[static_cast<std::size_t>(b)] = (mask >> b) & 1 ? 1 : 0;
    visit(MultiLineRing::decode(flat, n_lines));
  }
}

bool roundtrips(const MultiLineRing& x, long i, std::string* detail) {
  multiline::LineStep fwd = multiline::forward_step(x, i);
  multiline::LineStep back = multiline::reverse_step(fwd.state, fwd.exit_site);
  if (back.state == x && back.exit_site == i) return true;
  if (detail) {
    std::ostringstream os;
    os << "stack " << join_codes(x.encode()) << " site " << i;
    *detail = os.str();
  }
  return false;
}

bool counts_feasible(const MultiLineRing& x) {
  std::vector<long> counts = x.line_counts();
  for (std::size_t m = 1; m < counts.size(); ++m)
    if (counts[m] < counts[m - 1]) return false;
  return true;
}

MultiLineRing random_stack(int n_sites, int n_lines, sim::Rng& rng) {
  MultiLineRing x(n_lines, n_sites);
  for (int m = 1; m <= n_lines; ++m)
    for (long i = 0; i < n_sites; ++i)
      x.set_particle(m, i, rng.bernoulli(0.5));
  return x;
}

// Every configuration over {1..n_classes, hole} on the ring.
template <typename Visit>
void for_each_config(int n_sites, int n_classes, Visit&& visit) {
  std::vector<int> codes(static_cast<std::size_t>(n_sites), 0);
  while (true) {
    visit(codes);
    int pos = 0;
    while (pos < n_sites) {
      if (++codes[static_cast<std::size_t>(pos)] <= n_classes) break;
      codes[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n_sites) break;
  }
}

}  // namespace

SuiteResult bijection_exhaustive(int n_sites, int n_lines) {
  SuiteResult result;
  for_each_stack(n_sites, n_lines, [&](const MultiLineRing& x) {
    if (!result.ok) return;
    for (long i = 0; i < n_sites; ++i) {
      ++result.cases;
      if (!roundtrips(x, i, &result.detail)) {
        result.ok = false;
        return;
      }
    }
  });
  return result;
}

SuiteResult bijection_trials(int n_sites, int n_lines, long trials,
                             std::uint64_t seed) {
  SuiteResult result;
  sim::Rng rng(seed);
  for (long t = 0; t < trials; ++t) {
    MultiLineRing x = random_stack(n_sites, n_lines, rng);
    long i = static_cast<long>(rng.below(static_cast<std::uint64_t>(n_sites)));
    ++result.cases;
    if (!roundtrips(x, i, &result.detail)) {
      result.ok = false;
      break;
    }
  }
  return result;
}

SuiteResult balance_instance(int n_sites, const Counts& p) {
  SuiteResult result;
  exact::WeightedDistribution dist = exact::stationary_weights(n_sites, p);
  result.cases = dist.weights.size();
  std::vector<int> counterexample;
  if (!exact::verify_balance(dist, &counterexample)) {
    result.ok = false;
    result.detail = "state " + join_codes(counterexample);
  }
  return result;
}

SuiteResult minimal_instance(int n_sites, const Counts& p) {
  SuiteResult result;
  exact::WeightedDistribution dist = exact::stationary_weights(n_sites, p);
  result.cases = dist.weights.size();
  if (!exact::verify_minimal_structure(dist)) {
    result.ok = false;
    result.detail = "minimal-weight structure violated";
  }
  return result;
}

SuiteResult commutation_exhaustive(int n_sites, int n_lines) {
  SuiteResult result;
  for_each_stack(n_sites, n_lines, [&](const MultiLineRing& x) {
    if (!result.ok || !counts_feasible(x)) return;
    for (long i = 0; i < n_sites; ++i) {
      ++result.cases;
      if (!multiline::commutation_check(x, i)) {
        result.ok = false;
        result.detail = "stack " + join_codes(x.encode()) + " site " + std::to_string(i);
        return;
      }
    }
  });
  return result;
}

SuiteResult commutation_trials(int n_sites, int n_lines, long trials,
                               std::uint64_t seed) {
  SuiteResult result;
  sim::Rng rng(seed);
  long done = 0;
  while (done < trials) {
    MultiLineRing x = random_stack(n_sites, n_lines, rng);
    if (!counts_feasible(x)) continue;
    long i = static_cast<long>(rng.below(static_cast<std::uint64_t>(n_sites)));
    ++result.cases;
    ++done;
    if (!multiline::commutation_check(x, i)) {
      result.ok = false;
      result.detail = "stack " + join_codes(x.encode()) + " site " + std::to_string(i);
      break;
    }
  }
  return result;
}

SuiteResult queue_equivalence_exhaustive(int n_sites, int max_classes) {
  SuiteResult result;
  for (int m = 1; m <= max_classes && result.ok; ++m) {
    for_each_config(n_sites, m, [&](const std::vector<int>& a_codes) {
      if (!result.ok) return;
      RingConfig a = RingConfig::decode(a_codes, m);
      long arrivals = class_counts(a).total();
      for_each_config(n_sites, 1, [&](const std::vector<int>& s_codes) {
        if (!result.ok) return;
        RingConfig s = RingConfig::decode(s_codes, 1);
        if (arrivals > class_counts(s).total()) return;
        ++result.cases;
        RingConfig by_collapse = queueing::serve_ring(a, s);
        RingConfig by_recurrence = queueing::serve_ring_by_recurrence(a, s);
        if (by_collapse != by_recurrence) {
          result.ok = false;
          result.detail = "arrivals " + join_codes(a_codes) + " services " +
                          join_codes(s_codes);
        }
      });
    });
  }
  return result;
}

SuiteResult queue_identity_exhaustive(int n_sites, int max_classes) {
  SuiteResult result;
  for (int m = 1; m <= max_classes && result.ok; ++m) {
    for_each_config(n_sites, m + 1, [&](const std::vector<int>& d_codes) {
      if (!result.ok) return;
      RingConfig d = RingConfig::decode(d_codes, m + 1);
      ++result.cases;
      RingConfig rebuilt =
          queueing::serve_ring(queueing::strip_unused(d), queueing::services_of(d));
      if (rebuilt != d) {
        result.ok = false;
        result.detail = "departures " + join_codes(d_codes);
      }
    });
  }
  return result;
}

SuiteResult queue_uniqueness_exhaustive(int n_sites, int max_classes) {
  SuiteResult result;
  for (int m = 1; m <= max_classes && result.ok; ++m) {
    // group every feasible (arrivals, services) pair by its departures
    std::map<std::vector<int>, std::vector<std::pair<std::vector<int>, std::vector<int>>>>
        preimages;
    for_each_config(n_sites, m, [&](const std::vector<int>& a_codes) {
      RingConfig a = RingConfig::decode(a_codes, m);
      long arrivals = class_counts(a).total();
      for_each_config(n_sites, 1, [&](const std::vector<int>& s_codes) {
        RingConfig s = RingConfig::decode(s_codes, 1);
        if (arrivals > class_counts(s).total()) return;
        preimages[queueing::serve_ring(a, s).encode()].push_back(
            {a_codes, s_codes});
      });
    });
    for (const auto& [d_codes, sources] : preimages) {
      RingConfig d = RingConfig::decode(d_codes, m + 1);
      if (!exact::is_minimal_state(d)) continue;
      ++result.cases;
      bool unique = sources.size() == 1 &&
                    sources.front().first == queueing::strip_unused(d).encode() &&
                    sources.front().second == queueing::services_of(d).encode();
      if (!unique) {
        result.ok = false;
        result.detail = "departures " + join_codes(d_codes) + " have " +
                        std::to_string(sources.size()) + " preimages";
        break;
      }
    }
  }
  return result;
}

}  // namespace mtasep::verify
