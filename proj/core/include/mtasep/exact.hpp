#pragma once

// Exact stationary structure on small rings: the stationary law of the
// n-type dynamics with counts p is the pushforward of the uniform measure
// on line stacks with particle counts (q_1, ..., q_n), so every probability
// is an integer weight over the common denominator M = prod_m C(N, q_m).

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/errors.hpp"
#include "mtasep/multiline.hpp"

namespace mtasep::exact {

using BigUint = unsigned __int128;

BigUint checked_add(BigUint a, BigUint b);
BigUint checked_mul(BigUint a, BigUint b);
std::string to_decimal(BigUint v);
BigUint binomial(long n, long k);

// M = prod_m C(N, q_m) for the running totals q of p; overflow throws.
BigUint common_denominator(int n_sites, const Counts& p);

struct WeightedDistribution {
  int n_sites = 0;
  int n_classes = 0;
  Counts counts;
  BigUint denominator = 0;
  std::map<std::vector<int>, BigUint> weights;  // keyed by encoded configs

  BigUint weight_of(const RingConfig& u) const;
  std::map<std::vector<int>, double> normalized() const;
  BigUint weight_sum() const;
};

// Enumerate every line stack with counts (q_1..q_n) and tally the bottom
// assigned line. Throws ResourceError when M exceeds `enumeration_cap`.
WeightedDistribution stationary_weights(int n_sites, const Counts& p,
                                        std::uint64_t enumeration_cap = 10'000'000);

// Visit every stack of binary ring lines with the given particle counts.
void for_each_line_stack(int n_sites, const std::vector<long>& line_counts,
                         const std::function<void(const multiline::MultiLineRing&)>& visit);

// All states with the given counts, in sorted encoded order.
std::vector<RingConfig> states_with_counts(int n_sites, const Counts& p);

// A state of minimal weight: every hole is followed by a hole or the top
// class, and every class-m particle by a value of class m-1 or higher.
bool is_minimal_state(const RingConfig& u);

std::vector<RingConfig> minimal_states(int n_sites, const Counts& p);

// Global balance of the weight vector under unit-rate adjacent sorts,
// checked in exact integers. On failure, the offending state lands in
// `counterexample` when given.
bool verify_balance(const WeightedDistribution& dist,
                    std::vector<int>* counterexample = nullptr);

// Minimal-weight structure: weights cover all states with the counts, sum
// to the denominator, have minimum exactly 1, and the weight-1 states are
// precisely the minimal ones.
bool verify_minimal_structure(const WeightedDistribution& dist);

// Reverse the sites and the class order in one move: class 1 and holes
// trade places, class k becomes n + 2 - k, and site j moves to -j.
RingConfig reflect_reverse(const RingConfig& u);

// Counts of the reflected state: p'_1 = N - q_n, p'_k = p_{n+2-k}.
Counts reflect_reverse_counts(int n_sites, const Counts& p);

// Total variation distance between two normalized distributions.
double tv_distance(const std::map<std::vector<int>, double>& a,
                   const std::map<std::vector<int>, double>& b);

}  // namespace mtasep::exact
