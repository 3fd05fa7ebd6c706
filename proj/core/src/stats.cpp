#include "mtasep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "mtasep/errors.hpp"
#include "mtasep/queue.hpp"
#include "mtasep/rng.hpp"
#include "mtasep/simulate.hpp"

namespace mtasep::stats {

double chi_square_pvalue(double statistic, long dof) {
  if (dof < 1) throw std::domain_error("chi-square needs at least one dof");
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

namespace {

// Sparse two-way table; chi-square runs over the nonzero marginals only.
class Contingency {
 public:
  void add(long row, long col) {
    ++cells_[{row, col}];
    ++row_tot_[row];
    ++col_tot_[col];
    ++total_;
  }
  long total() const { return total_; }
  long rows() const { return static_cast<long>(row_tot_.size()); }
  long cols() const { return static_cast<long>(col_tot_.size()); }

  struct Chi2 {
    double stat = 0;
    long dof = 0;
  };

  Chi2 chi2() const {
    Chi2 out;
    if (rows() < 2 || cols() < 2 || total_ == 0) return out;
    for (const auto& [r, rt] : row_tot_) {
      for (const auto& [c, ct] : col_tot_) {
        double expected = static_cast<double>(rt) * static_cast<double>(ct) /
                          static_cast<double>(total_);
        auto it = cells_.find({r, c});
        double observed = it == cells_.end() ? 0.0 : static_cast<double>(it->second);
        out.stat += (observed - expected) * (observed - expected) / expected;
      }
    }
    out.dof = (rows() - 1) * (cols() - 1);
    return out;
  }

 private:
  std::map<std::pair<long, long>, long> cells_;
  std::map<long, long> row_tot_, col_tot_;
  long total_ = 0;
};

// One slot of the single-class queue; returns the encoded output value:
// 1 = used service, 2 = unused service, 3 = no service.
int queue_slot(long& q, bool arrival, bool service) {
  int out = 3;
  if (service) out = (q > 0 || arrival) ? 1 : 2;
  long next = q + (arrival ? 1 : 0) - (service ? 1 : 0);
  q = std::max(next, 0L);
  return out;
}

}  // namespace

std::string outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    default: return "inconclusive";
  }
}

bool is_renewal_string(const std::vector<int>& w, int n_classes) {
  if (w.empty() || n_classes < 2) return false;
  for (int v : w)
    if (v < 1 || v > n_classes) return false;
  std::size_t r = w.size() - 1;
  if (w.front() != n_classes || w.back() != 2) return false;
  for (int m = 3; m <= n_classes - 1; ++m) {
    bool found = false;
    for (std::size_t j = 0; j < r && !found; ++j) {
      if (w[j] != m) continue;
      bool tail_ok = true;
      for (std::size_t k = j + 1; k <= r; ++k)
        if (w[k] > m) { tail_ok = false; break; }
      found = tail_ok;
    }
    if (!found) return false;
  }
  return true;
}

TestReport renewal_emptiness_check(const std::vector<double>& lambdas,
                                   long window_sites, std::uint64_t seed,
                                   const std::vector<int>& w) {
  int n = static_cast<int>(lambdas.size());
  if (!is_renewal_string(w, n))
    throw std::invalid_argument("not a renewal string for this class count");
  if (window_sites < static_cast<long>(w.size()))
    throw std::invalid_argument("window shorter than the string");

  sim::Rng rng(seed);
  long burn_in = sim::default_burn_in(lambdas);
  sim::WindowSample sample =
      sim::sample_window_detailed(0, window_sites - 1, lambdas, burn_in, rng);
  const WindowConfig& bottom = sample.bottom_extended();

  long r = static_cast<long>(w.size()) - 1;
  long occurrences = 0, violations = 0;
  for (long t = 0; t + r <= window_sites - 1; ++t) {
    bool match = true;
    for (long i = 0; i <= r && match; ++i) {
      ClassValue v = bottom.at(t + i);
      match = v.is_particle() && v.klass() == w[static_cast<std::size_t>(i)];
    }
    if (!match) continue;
    ++occurrences;
    for (int level = 1; level <= n - 1; ++level) {
      if (!sample.queue_state_after(level, t + r).is_empty()) {
        ++violations;
        break;
      }
    }
  }

  TestReport report;
  report.name = "renewal_emptiness";
  report.statistic = static_cast<double>(violations);
  report.threshold = 0;
  report.samples = occurrences;
  report.metrics["occurrences"] = static_cast<double>(occurrences);
  report.metrics["violations"] = static_cast<double>(violations);
  if (occurrences == 0) {
    report.outcome = Outcome::inconclusive;
    report.notes = "string never occurred in the sampled window";
  } else {
    report.outcome = violations == 0 ? Outcome::pass : Outcome::fail;
    std::ostringstream os;
    os << occurrences << " occurrences, " << violations
       << " with a nonempty queue after the string";
    report.notes = os.str();
  }
  return report;
}

TestReport factorization_test(const std::vector<double>& lambdas,
                              const std::vector<int>& w, int left_sites,
                              int right_sites, long samples, std::uint64_t seed) {
  int n = static_cast<int>(lambdas.size());
  if (w.empty()) throw std::invalid_argument("empty string");
  for (int v : w)
    if (v < 1 || v > n) throw std::invalid_argument("string value outside classes");
  if (left_sites < 1 || right_sites < 1)
    throw std::invalid_argument("cylinders need at least one site");
  bool control = !is_renewal_string(w, n);

  sim::Rng rng(seed);
  long burn_in = sim::default_burn_in(lambdas);
  long r = static_cast<long>(w.size()) - 1;
  Contingency table;
  for (long s = 0; s < samples; ++s) {
    sim::WindowSample sample = sim::sample_window_detailed(
        -left_sites, r + right_sites, lambdas, burn_in, rng);
    const WindowConfig& bottom = sample.bottom_extended();
    bool match = true;
    for (long i = 0; i <= r && match; ++i) {
      ClassValue v = bottom.at(i);
      match = v.is_particle() && v.klass() == w[static_cast<std::size_t>(i)];
    }
    if (!match) continue;
    long left = 0, right = 0;
    for (int l = 0; l < left_sites; ++l)
      left = left * (n + 1) + bottom.at(-1 - l).encode();
    for (int l = 0; l < right_sites; ++l)
      right = right * (n + 1) + bottom.at(r + 1 + l).encode();
    table.add(left, right);
  }

  Contingency::Chi2 chi = table.chi2();
  TestReport report;
  report.name = "factorization";
  report.threshold = 0.001;
  report.samples = table.total();
  report.metrics["conditioned_samples"] = static_cast<double>(table.total());
  report.metrics["chi_square"] = chi.stat;
  report.metrics["dof"] = static_cast<double>(chi.dof);
  std::string prefix =
      control ? "control string (not a renewal string); " : "";
  if (table.total() < 200 || chi.dof < 1) {
    report.outcome = Outcome::inconclusive;
    report.notes = prefix + "too few conditioned samples for a chi-square";
    return report;
  }
  double p = chi_square_pvalue(chi.stat, chi.dof);
  report.statistic = p;
  report.metrics["p_value"] = p;
  if (control) {
    report.outcome = Outcome::inconclusive;
    std::ostringstream os;
    os << prefix << "p=" << p << ", not gated";
    report.notes = os.str();
  } else {
    report.outcome = p > 0.001 ? Outcome::pass : Outcome::fail;
    std::ostringstream os;
    os << "independence chi-square p=" << p << " on " << table.total()
       << " conditioned samples";
    report.notes = os.str();
  }
  return report;
}

TestReport hole_independence_test(const std::vector<double>& lambdas,
                                  long half_width, long samples,
                                  std::uint64_t seed) {
  if (half_width < 5) throw std::invalid_argument("need half-width of at least 5");
  int n = static_cast<int>(lambdas.size());
  sim::Rng rng(seed);
  long burn_in = sim::default_burn_in(lambdas);

  Contingency holes_right, ones_left;
  for (long s = 0; s < samples; ++s) {
    sim::WindowSample sample = sim::sample_window_detailed(
        -half_width, half_width, lambdas, burn_in, rng);
    const WindowConfig& u = sample.bottom_extended();
    long hole_pattern = 0, one_pattern = 0;
    for (long j = 1; j <= 5; ++j)
      hole_pattern = hole_pattern * 2 + (u.at(j).is_hole() ? 1 : 0);
    for (long j = -1; j >= -5; --j)
      one_pattern = one_pattern * 2 + (u.at(j).encode() == 1 ? 1 : 0);
    long left_cyl = u.at(0).encode() * (n + 1) + u.at(-1).encode();
    long right_cyl = u.at(0).encode() * (n + 1) + u.at(1).encode();
    holes_right.add(left_cyl, hole_pattern);
    ones_left.add(right_cyl, one_pattern);
  }

  Contingency::Chi2 chi_holes = holes_right.chi2();
  Contingency::Chi2 chi_ones = ones_left.chi2();
  TestReport report;
  report.name = "hole_independence";
  report.threshold = 0.001;
  report.samples = samples;
  if (chi_holes.dof < 1 || chi_ones.dof < 1) {
    report.outcome = Outcome::inconclusive;
    report.notes = "degenerate contingency table";
    return report;
  }
  double p_holes = chi_square_pvalue(chi_holes.stat, chi_holes.dof);
  double p_ones = chi_square_pvalue(chi_ones.stat, chi_ones.dof);
  report.statistic = std::min(p_holes, p_ones);
  report.metrics["p_holes_vs_left"] = p_holes;
  report.metrics["p_ones_vs_right"] = p_ones;
  report.metrics["chi_square_holes"] = chi_holes.stat;
  report.metrics["chi_square_ones"] = chi_ones.stat;
  report.outcome =
      (p_holes > 0.001 && p_ones > 0.001) ? Outcome::pass : Outcome::fail;
  std::ostringstream os;
  os << "holes-right p=" << p_holes << ", ones-left p=" << p_ones;
  report.notes = os.str();
  return report;
}

TestReport burke_test(double arrival_rate, double service_rate, long steps,
                      std::uint64_t seed) {
  if (!(arrival_rate > 0) || !(service_rate > 0) || service_rate > 1 ||
      arrival_rate >= service_rate)
    throw InfeasibleError("need 0 < arrival < service <= 1");

  sim::Rng rng(seed);
  double ratio = queueing::stationary_queue_ratio(arrival_rate, service_rate);
  long q = rng.geometric_ratio(ratio);
  long burn_in =
      2000 + static_cast<long>(20.0 / (service_rate - arrival_rate));
  for (long j = 0; j < burn_in; ++j)
    queue_slot(q, rng.bernoulli(arrival_rate), rng.bernoulli(service_rate));

  std::vector<char> departed(static_cast<std::size_t>(steps));
  for (long j = 0; j < steps; ++j) {
    int out = queue_slot(q, rng.bernoulli(arrival_rate), rng.bernoulli(service_rate));
    departed[static_cast<std::size_t>(j)] = out == 1 ? 1 : 0;
  }

  long n_departures = std::count(departed.begin(), departed.end(), char{1});
  TestReport report;
  report.name = "burke";
  report.samples = steps;
  report.metrics["burn_in"] = static_cast<double>(burn_in);
  if (n_departures < 1000) {
    report.outcome = Outcome::inconclusive;
    report.notes = "too few departures to test";
    return report;
  }

  double mean = static_cast<double>(n_departures) / static_cast<double>(steps);
  double sigma = std::sqrt(arrival_rate * (1 - arrival_rate) /
                           static_cast<double>(steps));
  double rate_dev = std::abs(mean - arrival_rate);
  bool rate_ok = rate_dev <= 4 * sigma;
  report.statistic = rate_dev;
  report.threshold = 4 * sigma;
  report.metrics["rate"] = mean;
  report.metrics["rate_dev"] = rate_dev;
  report.metrics["rate_tolerance"] = 4 * sigma;

  // lag autocorrelations of the departure indicator
  double var = mean * (1 - mean);
  double ac_threshold = 4.0 / std::sqrt(static_cast<double>(steps));
  double ac_max = 0;
  bool ac_ok = true;
  for (long lag = 1; lag <= 5; ++lag) {
    double acc = 0;
    for (long j = 0; j + lag < steps; ++j)
      acc += (departed[static_cast<std::size_t>(j)] - mean) *
             (departed[static_cast<std::size_t>(j + lag)] - mean);
    double ac = acc / (static_cast<double>(steps - lag) * var);
    report.metrics["autocorr_lag" + std::to_string(lag)] = ac;
    ac_max = std::max(ac_max, std::abs(ac));
    if (std::abs(ac) > ac_threshold) ac_ok = false;
  }
  report.metrics["autocorr_max"] = ac_max;
  report.metrics["autocorr_tolerance"] = ac_threshold;

  // inter-departure gaps against the geometric law
  std::vector<long> gaps;
  long last = -1;
  for (long j = 0; j < steps; ++j) {
    if (!departed[static_cast<std::size_t>(j)]) continue;
    if (last >= 0) gaps.push_back(j - last);
    last = j;
  }
  double n_gaps = static_cast<double>(gaps.size());
  long max_bin = 1;
  while (n_gaps * arrival_rate *
             std::pow(1 - arrival_rate, static_cast<double>(max_bin)) >=
         5.0)
    ++max_bin;
  std::vector<double> observed(static_cast<std::size_t>(max_bin + 1), 0);
  for (long g : gaps)
    ++observed[static_cast<std::size_t>(std::min(g, max_bin + 1) - 1)];
  double chi = 0;
  for (long k = 1; k <= max_bin; ++k) {
    double expected = n_gaps * arrival_rate *
                      std::pow(1 - arrival_rate, static_cast<double>(k - 1));
    double diff = observed[static_cast<std::size_t>(k - 1)] - expected;
    chi += diff * diff / expected;
  }
  double tail_expected =
      n_gaps * std::pow(1 - arrival_rate, static_cast<double>(max_bin));
  double tail_diff = observed[static_cast<std::size_t>(max_bin)] - tail_expected;
  chi += tail_diff * tail_diff / tail_expected;
  double gap_p = chi_square_pvalue(chi, max_bin);  // bins + tail - 1
  bool gap_ok = gap_p > 0.001;
  report.metrics["gap_chi_square"] = chi;
  report.metrics["gap_p"] = gap_p;

  report.outcome = (rate_ok && ac_ok && gap_ok) ? Outcome::pass : Outcome::fail;
  std::ostringstream os;
  os << "rate " << (rate_ok ? "ok" : "off") << " (" << mean << " vs "
     << arrival_rate << "), autocorr " << (ac_ok ? "ok" : "off") << " (max |ac| "
     << ac_max << "), gap law " << (gap_ok ? "ok" : "off") << " (p=" << gap_p
     << "); burn-in " << burn_in << " slots";
  report.notes = os.str();
  return report;
}

TestReport queue_length_fit(double lambda1, double lambda2, long steps,
                            std::uint64_t seed) {
  double mu = lambda1 + lambda2;
  if (!(lambda1 > 0) || !(lambda2 > 0) || mu > 1)
    throw InfeasibleError("need positive rates with sum at most 1");

  double r_balance = queueing::stationary_queue_ratio(lambda1, mu);
  double r_rate_ratio = lambda1 / mu;

  sim::Rng rng(seed);
  long burn_in = 2000 + static_cast<long>(20.0 / (mu - lambda1));
  long q = rng.geometric_ratio(r_balance);
  for (long j = 0; j < burn_in; ++j)
    queue_slot(q, rng.bernoulli(lambda1), rng.bernoulli(mu));

  std::vector<long> hist;
  for (long j = 0; j < steps; ++j) {
    queue_slot(q, rng.bernoulli(lambda1), rng.bernoulli(mu));
    if (static_cast<std::size_t>(q) >= hist.size())
      hist.resize(static_cast<std::size_t>(q) + 1, 0);
    ++hist[static_cast<std::size_t>(q)];
  }

  TestReport report;
  report.name = "queue_length_fit";
  report.samples = steps;
  report.threshold = 0.02;
  report.metrics["ratio_balance"] = r_balance;
  report.metrics["ratio_rate"] = r_rate_ratio;
  report.metrics["burn_in"] = static_cast<double>(burn_in);
  if (hist.size() < 5 || hist[4] == 0) {
    report.outcome = Outcome::inconclusive;
    report.notes = "queue too short to estimate four ratios";
    return report;
  }
  double worst = 0;
  for (int k = 0; k <= 3; ++k) {
    double ratio = static_cast<double>(hist[static_cast<std::size_t>(k + 1)]) /
                   static_cast<double>(hist[static_cast<std::size_t>(k)]);
    report.metrics["ratio_" + std::to_string(k)] = ratio;
    worst = std::max(worst, std::abs(ratio - r_balance));
  }
  report.statistic = worst;
  report.outcome = worst <= 0.02 ? Outcome::pass : Outcome::fail;
  std::ostringstream os;
  os << "consecutive-probability ratios match "
     << "lambda1(1-mu)/((1-lambda1)mu) = " << r_balance
     << " (max deviation " << worst << "); the rate ratio lambda1/mu = "
     << r_rate_ratio << " is recorded for comparison and does not fit";
  report.notes = os.str();
  return report;
}

TestReport coupling_experiment(double lambda1, double lambda2, long horizon,
                               long paths, std::uint64_t seed) {
  double mu = lambda1 + lambda2;
  if (!(lambda1 > 0) || !(lambda2 > 0) || mu > 1)
    throw InfeasibleError("need positive rates with sum at most 1");
  double ratio = queueing::stationary_queue_ratio(lambda1, mu);

  long violations = 0;
  std::vector<long> disagreements(static_cast<std::size_t>(horizon + 1), 0);
  for (long path = 0; path < paths; ++path) {
    sim::Rng rng = sim::Rng::derived(seed, static_cast<std::uint64_t>(path));
    long q = rng.geometric_ratio(ratio);  // stationary copy
    long q_empty = 0;                     // empty copy
    long coalesce = q == 0 ? 0 : -1;      // first time the stationary queue empties
    for (long j = 1; j <= horizon; ++j) {
      bool arrival = rng.bernoulli(lambda1);
      bool service = rng.bernoulli(mu);
      int u = queue_slot(q, arrival, service);
      int u_empty = queue_slot(q_empty, arrival, service);
      bool coalesced = coalesce >= 0;
      if (q < q_empty) ++violations;                    // queue dominance
      else if (u > u_empty) ++violations;               // output ordering
      else if (coalesced && q != q_empty) ++violations; // stuck together
      else if (coalesced && j > coalesce && u != u_empty) ++violations;
      if (u != u_empty) ++disagreements[static_cast<std::size_t>(j)];
      if (coalesce < 0 && q == 0) coalesce = j;
    }
  }

  // log-linear decay of the disagreement probability
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n_points = 0;
  for (long j = 1; j <= horizon; ++j) {
    long c = disagreements[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    double x = static_cast<double>(j);
    double y = std::log(static_cast<double>(c) / static_cast<double>(paths));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n_points;
  }

  TestReport report;
  report.name = "coupling";
  report.samples = paths;
  report.statistic = static_cast<double>(violations);
  report.threshold = 0;
  report.metrics["violations"] = static_cast<double>(violations);
  if (horizon >= 10)
    report.metrics["disagree_at_10"] =
        static_cast<double>(disagreements[10]) / static_cast<double>(paths);
  if (horizon >= 50)
    report.metrics["disagree_at_50"] =
        static_cast<double>(disagreements[50]) / static_cast<double>(paths);
  if (n_points < 3) {
    report.outcome = Outcome::inconclusive;
    report.notes = "not enough disagreement data for a decay fit";
    return report;
  }
  double denom = static_cast<double>(n_points) * sxx - sx * sx;
  double slope = (static_cast<double>(n_points) * sxy - sx * sy) / denom;
  report.metrics["slope"] = slope;
  report.outcome =
      (violations == 0 && slope < 0) ? Outcome::pass : Outcome::fail;
  std::ostringstream os;
  os << violations << " dominance violations across " << paths
     << " coupled paths; disagreement decay slope " << slope;
  report.notes = os.str();
  return report;
}

}  // namespace mtasep::stats
