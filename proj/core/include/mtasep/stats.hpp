#pragma once

// Statistical checks against the queueing predictions: departure processes,
// stationary queue laws, coupling dominance, and the regeneration structure
// of window samples. Every check is seeded and reports a TestReport.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtasep/config.hpp"

namespace mtasep::stats {

enum class Outcome { pass, fail, inconclusive };

struct TestReport {
  std::string name;
  double statistic = 0;
  double threshold = 0;
  Outcome outcome = Outcome::fail;
  long samples = 0;
  std::string notes;
  std::map<std::string, double> metrics;

  bool passed() const { return outcome == Outcome::pass; }
};

std::string outcome_name(Outcome outcome);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, long dof);

// A string that regenerates the window construction: starts with the top
// class, ends with class 2, and for n >= 4 each class m in {3..n-1} shows
// up with only values <= m after it.
bool is_renewal_string(const std::vector<int>& w, int n_classes);

// Wherever w occurs on the bottom line of a window sample, every tandem
// queue must be empty right after the occurrence. Zero occurrences make the
// check inconclusive.
TestReport renewal_emptiness_check(const std::vector<double>& lambdas,
                                   long window_sites, std::uint64_t seed,
                                   const std::vector<int>& w);

// Independence of the configurations left and right of an occurrence of w
// at a fixed position, via a chi-square on cylinder pairs. A string failing
// is_renewal_string is run as a control and never gated.
TestReport factorization_test(const std::vector<double>& lambdas,
                              const std::vector<int>& w, int left_sites,
                              int right_sites, long samples, std::uint64_t seed);

// Independence of the hole pattern on sites 1..5 from the cylinder
// (u(0), u(-1)), and of the class-1 pattern on sites -5..-1 from
// (u(0), u(1)).
TestReport hole_independence_test(const std::vector<double>& lambdas,
                                  long half_width, long samples,
                                  std::uint64_t seed);

// Slotted single-class queue with Bernoulli(arrival_rate) arrivals and
// Bernoulli(service_rate) services, run at stationarity: departures should
// be Bernoulli(arrival_rate) slots. Checks the departure frequency, lag
// autocorrelations, and the geometric inter-departure gap law.
TestReport burke_test(double arrival_rate, double service_rate, long steps,
                      std::uint64_t seed);

// Empirical stationary law of the queue with arrivals Bernoulli(lambda1)
// and services Bernoulli(lambda1 + lambda2). The consecutive-probability
// ratio is compared against the detailed-balance value
//   lambda1 (1 - lambda1 - lambda2) / ((1 - lambda1)(lambda1 + lambda2));
// the simple rate ratio lambda1 / (lambda1 + lambda2) is recorded alongside
// for reference.
TestReport queue_length_fit(double lambda1, double lambda2, long steps,
                            std::uint64_t seed);

// Two queues driven by the same arrivals and services, one started from the
// stationary queue law and one empty. The stationary copy dominates the
// empty one pathwise, outputs are ordered, both paths agree once the
// stationary queue first empties, and the disagreement probability decays.
TestReport coupling_experiment(double lambda1, double lambda2, long horizon,
                               long paths, std::uint64_t seed);

}  // namespace mtasep::stats
