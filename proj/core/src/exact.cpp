#include "mtasep/exact.hpp"

#include <algorithm>
#include <limits>

namespace mtasep::exact {

BigUint checked_add(BigUint a, BigUint b) {
  BigUint s = a + b;
  if (s < a) throw std::overflow_error("128-bit overflow in addition");
  return s;
}

BigUint checked_mul(BigUint a, BigUint b) {
  if (a == 0 || b == 0) return 0;
  BigUint p = a * b;
  if (p / a != b) throw std::overflow_error("128-bit overflow in multiplication");
  return p;
}

std::string to_decimal(BigUint v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BigUint binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigUint c = 1;
  for (long i = 1; i <= k; ++i) {
    // multiply before dividing keeps the intermediate integral
    c = checked_mul(c, static_cast<BigUint>(n - k + i));
    c /= static_cast<BigUint>(i);
  }
  return c;
}

BigUint common_denominator(int n_sites, const Counts& p) {
  if (p.total() > n_sites)
    throw InfeasibleError("counts exceed the ring size");
  BigUint m = 1;
  for (int r = 1; r <= p.n(); ++r)
    m = checked_mul(m, binomial(n_sites, p.q(r)));
  return m;
}

BigUint WeightedDistribution::weight_of(const RingConfig& u) const {
  auto it = weights.find(u.encode());
  return it == weights.end() ? 0 : it->second;
}

std::map<std::vector<int>, double> WeightedDistribution::normalized() const {
  std::map<std::vector<int>, double> out;
  double m = static_cast<double>(denominator);
  for (const auto& [state, w] : weights) out[state] = static_cast<double>(w) / m;
  return out;
}

BigUint WeightedDistribution::weight_sum() const {
  BigUint s = 0;
  for (const auto& [state, w] : weights) s = checked_add(s, w);
  return s;
}

namespace {

// March a k-subset of {0..n-1} through all positions in lexicographic order.
template <typename Visit>
void for_each_combination(int n, long k, Visit&& visit) {
  if (k < 0 || k > n) return;
  std::vector<long> idx(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    long i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (long j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

void for_each_line_stack(int n_sites, const std::vector<long>& line_counts,
                         const std::function<void(const multiline::MultiLineRing&)>& visit) {
  int n = static_cast<int>(line_counts.size());
  multiline::MultiLineRing stack(n, n_sites);
  std::function<void(int)> fill = [&](int m) {
    if (m > n) {
      visit(stack);
      return;
    }
    for_each_combination(n_sites, line_counts[static_cast<std::size_t>(m - 1)],
                         [&](const std::vector<long>& idx) {
                           for (long i = 0; i < n_sites; ++i) stack.set_particle(m, i, false);
                           for (long i : idx) stack.set_particle(m, i, true);
                           fill(m + 1);
                         });
  };
  fill(1);
}

WeightedDistribution stationary_weights(int n_sites, const Counts& p,
                                        std::uint64_t enumeration_cap) {
  BigUint m = common_denominator(n_sites, p);
  if (m > static_cast<BigUint>(enumeration_cap))
    throw ResourceError("enumeration of " + to_decimal(m) +
                        " stacks exceeds cap of " + std::to_string(enumeration_cap));
  WeightedDistribution dist;
  dist.n_sites = n_sites;
  dist.n_classes = p.n();
  dist.counts = p;
  dist.denominator = m;
  for_each_line_stack(n_sites, p.prefix(), [&](const multiline::MultiLineRing& x) {
    dist.weights[assign_classes(x).bottom().encode()] += 1;
  });
  return dist;
}

std::vector<RingConfig> states_with_counts(int n_sites, const Counts& p) {
  if (p.total() > n_sites) throw InfeasibleError("counts exceed the ring size");
  std::vector<int> codes;
  codes.reserve(static_cast<std::size_t>(n_sites));
  for (long h = 0; h < n_sites - p.total(); ++h) codes.push_back(0);
  for (int r = 1; r <= p.n(); ++r)
    for (long c = 0; c < p.p(r); ++c) codes.push_back(r);
  std::sort(codes.begin(), codes.end());
  std::vector<RingConfig> out;
  do {
    out.push_back(RingConfig::decode(codes, p.n()));
  } while (std::next_permutation(codes.begin(), codes.end()));
  return out;
}

bool is_minimal_state(const RingConfig& u) {
  int n = u.n_classes();
  for (long j = 0; j < u.size(); ++j) {
    ClassValue here = u.at(j);
    ClassValue next = u.at(j + 1);
    if (here.is_hole()) {
      if (!next.is_hole() && next.klass() != n) return false;
    } else {
      if (!next.is_hole() && next.klass() < here.klass() - 1) return false;
    }
  }
  return true;
}

std::vector<RingConfig> minimal_states(int n_sites, const Counts& p) {
  std::vector<RingConfig> out;
  for (const RingConfig& u : states_with_counts(n_sites, p))
    if (is_minimal_state(u)) out.push_back(u);
  return out;
}

bool verify_balance(const WeightedDistribution& dist,
                    std::vector<int>* counterexample) {
  std::vector<RingConfig> states = states_with_counts(dist.n_sites, dist.counts);
  std::map<std::vector<int>, BigUint> inflow;
  std::map<std::vector<int>, long> active;
  for (const RingConfig& x : states) {
    BigUint w = dist.weight_of(x);
    long bells = 0;
    for (long i = 0; i < x.size(); ++i) {
      if (x.at(i) < x.at(i - 1)) {
        ++bells;
        inflow[swap_adjacent(x, i).encode()] += w;
      }
    }
    active[x.encode()] = bells;
  }
  for (const RingConfig& y : states) {
    std::vector<int> key = y.encode();
    BigUint outflow = checked_mul(dist.weight_of(y),
                                  static_cast<BigUint>(active[key]));
    if (inflow[key] != outflow) {
      if (counterexample) *counterexample = key;
      return false;
    }
  }
  return true;
}

bool verify_minimal_structure(const WeightedDistribution& dist) {
  std::vector<RingConfig> states = states_with_counts(dist.n_sites, dist.counts);
  if (dist.weights.size() != states.size()) return false;
  BigUint min_w = 0;
  bool first = true;
  for (const auto& [state, w] : dist.weights) {
    if (w == 0) return false;
    if (first || w < min_w) min_w = w;
    first = false;
  }
  if (min_w != 1) return false;
  if (dist.weight_sum() != dist.denominator) return false;
  for (const RingConfig& u : states) {
    bool minimal = is_minimal_state(u);
    bool unit = dist.weight_of(u) == 1;
    if (minimal != unit) return false;
  }
  return true;
}

RingConfig reflect_reverse(const RingConfig& u) {
  int n = u.n_classes();
  RingConfig out(u.size(), n);
  for (long j = 0; j < u.size(); ++j) {
    ClassValue v = u.at(-j);
    ClassValue mapped;
    if (v.is_hole()) {
      mapped = ClassValue::of(1);
    } else if (v.klass() == 1) {
      mapped = ClassValue::hole();
    } else {
      mapped = ClassValue::of(n + 2 - v.klass());
    }
    out.set(j, mapped);
  }
  return out;
}

Counts reflect_reverse_counts(int n_sites, const Counts& p) {
  int n = p.n();
  std::vector<long> out(static_cast<std::size_t>(n), 0);
  out[0] = n_sites - p.total();
  for (int k = 2; k <= n; ++k)
    out[static_cast<std::size_t>(k - 1)] = p.p(n + 2 - k);
  return Counts(std::move(out));
}

double tv_distance(const std::map<std::vector<int>, double>& a,
                   const std::map<std::vector<int>, double>& b) {
  double sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

}  // namespace mtasep::exact
