// Acceptance suite: one line per criterion, [PASS] or [FAIL], exit code is
// the number of failures. Tolerances and seeds are pinned here on purpose;
// do not loosen them to make a run green.

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/exact.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/simulate.hpp"
#include "mtasep/stats.hpp"
#include "mtasep/verify.hpp"

using namespace mtasep;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool ok,
            const std::string& detail) {
  std::printf("[%s] %2d %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string cases(std::uint64_t n) {
  return std::to_string(n) + " cases";
}

bool stats_outcome(const stats::TestReport& r, std::string* detail) {
  *detail = r.notes;
  return r.passed();
}

}  // namespace

int main() {
  // 1. One bell step is invertible, exhaustively over five ring sizes.
  {
    bool ok = true;
    std::uint64_t total = 0;
    std::string detail;
    for (auto [n_sites, n_lines] :
         {std::pair{3, 2}, {4, 2}, {4, 3}, {5, 2}, {6, 3}}) {
      auto r = verify::bijection_exhaustive(n_sites, n_lines);
      total += r.cases;
      if (!r.ok) {
        ok = false;
        detail = r.detail;
        break;
      }
    }
    report(1, "bell step round-trips on every stack and site", ok,
           ok ? cases(total) : detail);
  }

  const std::vector<std::pair<int, Counts>> balance_instances{
      {3, Counts({1, 1})},    {5, Counts({1, 2})},       {5, Counts({1, 1, 1})},
      {6, Counts({2, 1, 1})}, {4, Counts({1, 1, 1, 1})},
  };

  // 2. Exact global balance of the enumerated weights.
  {
    bool ok = true;
    std::uint64_t total = 0;
    std::string detail;
    for (const auto& [n_sites, p] : balance_instances) {
      auto r = verify::balance_instance(n_sites, p);
      total += r.cases;
      if (!r.ok) {
        ok = false;
        detail = r.detail;
        break;
      }
    }
    report(2, "enumerated weights satisfy global balance", ok,
           ok ? cases(total) : detail);
  }

  // 3. The three-site two-class table, frozen.
  {
    auto dist = exact::stationary_weights(3, Counts({1, 1}));
    std::map<std::vector<int>, exact::BigUint> expected{
        {{1, 0, 2}, 1}, {{2, 1, 0}, 1}, {{0, 2, 1}, 1},
        {{1, 2, 0}, 2}, {{0, 1, 2}, 2}, {{2, 0, 1}, 2},
    };
    bool ok = dist.weights == expected && dist.denominator == exact::BigUint{9};
    report(3, "frozen weight table at three sites, two classes", ok,
           ok ? "6 states, denominator 9" : "table mismatch");
  }

  // 4. Minimal-weight structure, plus the full-class minimal sets.
  {
    bool ok = true;
    std::string detail;
    for (const auto& [n_sites, p] : balance_instances) {
      auto r = verify::minimal_instance(n_sites, p);
      if (!r.ok) {
        ok = false;
        detail = "instance N=" + std::to_string(n_sites);
        break;
      }
    }
    for (int n : {3, 4}) {
      if (!ok) break;
      Counts p(std::vector<long>(static_cast<std::size_t>(n), 1));
      auto minimal = exact::minimal_states(n, p);
      if (static_cast<int>(minimal.size()) != n) {
        ok = false;
        detail = "wrong minimal count at n=" + std::to_string(n);
        break;
      }
      std::vector<int> descending;
      for (int k = n; k >= 1; --k) descending.push_back(k);
      auto base = RingConfig::decode(descending, n);
      for (const auto& u : minimal) {
        bool is_shift = false;
        for (int s = 0; s < n && !is_shift; ++s) {
          bool same = true;
          for (long i = 0; i < n; ++i) same = same && u.at(i) == base.at(i - s);
          is_shift = same;
        }
        if (!is_shift) {
          ok = false;
          detail = "non-shift minimal state at n=" + std::to_string(n);
        }
      }
    }
    if (ok && exact::common_denominator(4, Counts({1, 1, 1, 1})) !=
                  exact::BigUint{96}) {
      ok = false;
      detail = "denominator at four sites, four classes";
    }
    report(4, "minimal states weigh exactly one and match the predicate", ok,
           detail);
  }

  // 5. Queue operator equivalence, identity, uniqueness.
  {
    bool ok = true;
    std::uint64_t total = 0;
    std::string detail;
    for (int n_sites = 1; n_sites <= 5 && ok; ++n_sites) {
      for (auto* suite : {&verify::queue_equivalence_exhaustive,
                          &verify::queue_identity_exhaustive,
                          &verify::queue_uniqueness_exhaustive}) {
        auto r = (*suite)(n_sites, 3);
        total += r.cases;
        if (!r.ok) {
          ok = false;
          detail = r.detail;
          break;
        }
      }
    }
    report(5, "queue routes agree and invert on minimal departures", ok,
           ok ? cases(total) : detail);
  }

  // 6. Bells act on assigned lines as adjacent sorts.
  {
    bool ok = true;
    std::uint64_t total = 0;
    std::string detail;
    for (int n_sites = 1; n_sites <= 5 && ok; ++n_sites)
      for (int n_lines = 1; n_lines <= 3; ++n_lines) {
        auto r = verify::commutation_exhaustive(n_sites, n_lines);
        total += r.cases;
        if (!r.ok) {
          ok = false;
          detail = r.detail;
          break;
        }
      }
    report(6, "one bell sorts every assigned line at its cascade site", ok,
           ok ? cases(total) : detail);
  }

  // 7. Long simulations land on the exact laws.
  {
    auto exact_dist = exact::stationary_weights(5, Counts({1, 2})).normalized();
    auto run = sim::gillespie_tasep(RingConfig::decode({1, 2, 2, 0, 0}, 2),
                                    sim::Horizon::events(1'000'000), 20250815);
    double tv_ring = exact::tv_distance(run.occupation.normalized(), exact_dist);

    auto stack_run = sim::gillespie_multiline(
        multiline::MultiLineRing::decode({1, 0, 0, 0, 1, 1, 0, 0}, 2),
        sim::Horizon::events(1'000'000), 20250815);
    std::map<std::vector<int>, double> uniform;
    exact::for_each_line_stack(4, {1, 2}, [&](const multiline::MultiLineRing& x) {
      uniform[x.encode()] = 1.0 / 24;
    });
    double tv_stack =
        exact::tv_distance(stack_run.occupation.normalized(), uniform);

    bool ok = tv_ring < 0.02 && tv_stack < 0.02;
    std::ostringstream os;
    os << "tv " << tv_ring << " (ring), " << tv_stack << " (stack), both < 0.02";
    report(7, "occupation measures converge to the exact laws", ok, os.str());
  }

  // 8. Departures of the stationary queue are memoryless.
  {
    auto r = stats::burke_test(0.2, 0.5, 1'000'000, 9);
    std::string detail;
    bool ok = stats_outcome(r, &detail);
    report(8, "departure stream is a fresh coin-flip process", ok, detail);
  }

  // 9. Queue lengths are geometric with the detailed-balance ratio.
  {
    auto r = stats::queue_length_fit(0.2, 0.3, 1'000'000, 4);
    std::string detail;
    bool ok = stats_outcome(r, &detail);
    ok = ok && r.metrics.at("ratio_balance") == 0.25 &&
         r.metrics.at("ratio_rate") == 0.4;
    report(9, "queue-length ratios match 0.25 within 0.02", ok, detail);
  }

  // 10. Stationary/empty coupling dominates and coalesces.
  {
    auto r = stats::coupling_experiment(0.2, 0.3, 1000, 10'000, 4);
    std::string detail;
    bool ok = stats_outcome(r, &detail);
    report(10, "coupled paths never violate dominance or coalescence", ok,
           detail);
  }

  // 11. Renewal strings empty the queues and split the window.
  {
    auto three =
        stats::renewal_emptiness_check({0.2, 0.2, 0.2}, 100'000, 2, {3, 2});
    auto four = stats::renewal_emptiness_check({0.23, 0.23, 0.23, 0.23},
                                               100'000, 2, {4, 1, 2, 3, 1, 2});
    auto split = stats::factorization_test({0.2, 0.2, 0.2}, {3, 2}, 2, 2,
                                           300'000, 2);
    bool ok = three.passed() && four.passed() && split.passed();
    std::ostringstream os;
    os << three.notes << " | " << four.notes << " | " << split.notes;
    report(11, "queues empty at renewal strings; sides independent", ok,
           os.str());
  }

  // 12. The hole pattern ahead is independent of the configuration behind.
  {
    auto two = stats::hole_independence_test({0.3, 0.2}, 10, 100'000, 5);
    auto three = stats::hole_independence_test({0.2, 0.2, 0.2}, 10, 100'000, 5);
    bool ok = two.passed() && three.passed();
    std::ostringstream os;
    os << two.notes << " | " << three.notes;
    report(12, "hole pattern independent of the occupant behind", ok, os.str());
  }

  std::printf("%d of 12 criteria failed\n", failures);
  return failures;
}
