#include "mtasep/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mtasep::sim {

std::map<std::vector<int>, double> EmpiricalDistribution::normalized() const {
  std::map<std::vector<int>, double> out;
  if (total_time <= 0) return out;
  for (const auto& [state, w] : occupation) out[state] = w / total_time;
  return out;
}

TasepSimulator::TasepSimulator(RingConfig initial, std::uint64_t seed)
    : state_(std::move(initial)), rng_(seed) {}

void TasepSimulator::ensure_pending() {
  if (has_pending_) return;
  int n = state_.size();
  pending_.t = time_ + rng_.exponential(static_cast<double>(n));
  pending_.site = static_cast<long>(rng_.below(static_cast<std::uint64_t>(n)));
  has_pending_ = true;
}

double TasepSimulator::next_event_time() {
  ensure_pending();
  return pending_.t;
}

Event TasepSimulator::step() {
  ensure_pending();
  Event ev = pending_;
  has_pending_ = false;
  time_ = ev.t;
  ++events_;
  state_ = swap_adjacent(state_, ev.site);
  return ev;
}

void TasepSimulator::advance_to(double t) {
  while (next_event_time() <= t) step();
  time_ = t;
}

MultilineSimulator::MultilineSimulator(multiline::MultiLineRing initial,
                                       std::uint64_t seed)
    : state_(std::move(initial)), rng_(seed) {}

void MultilineSimulator::ensure_pending() {
  if (has_pending_) return;
  int n = state_.size();
  pending_.t = time_ + rng_.exponential(static_cast<double>(n));
  pending_.site = static_cast<long>(rng_.below(static_cast<std::uint64_t>(n)));
  has_pending_ = true;
}

double MultilineSimulator::next_event_time() {
  ensure_pending();
  return pending_.t;
}

Event MultilineSimulator::step() {
  ensure_pending();
  Event ev = pending_;
  has_pending_ = false;
  time_ = ev.t;
  ++events_;
  state_ = multiline::forward_jump(state_, ev.site);
  return ev;
}

void MultilineSimulator::advance_to(double t) {
  while (next_event_time() <= t) step();
  time_ = t;
}

namespace {

// Shared run loop: holding times weight the state seen before each bell.
template <typename Simulator, typename Run, typename EncodeState>
Run run_gillespie(Simulator& simulator, const Horizon& horizon,
                  std::uint64_t seed, std::uint64_t record_every,
                  EncodeState&& encode) {
  Run run;
  run.trace.seed = seed;
  if (record_every > 0)
    run.trace.snapshots.push_back({simulator.time(), encode(simulator.state())});
  while (true) {
    if (horizon.max_events && simulator.events() >= *horizon.max_events) break;
    double t_next = simulator.next_event_time();
    if (horizon.max_time && t_next > *horizon.max_time) {
      run.occupation.add(encode(simulator.state()),
                         *horizon.max_time - simulator.time());
      simulator.advance_to(*horizon.max_time);
      break;
    }
    run.occupation.add(encode(simulator.state()), t_next - simulator.time());
    Event ev = simulator.step();
    run.trace.events.push_back(ev);
    if (record_every > 0 && simulator.events() % record_every == 0)
      run.trace.snapshots.push_back({ev.t, encode(simulator.state())});
  }
  run.trace.final_state = encode(simulator.state());
  run.final = simulator.state();
  return run;
}

}  // namespace

TasepRun gillespie_tasep(const RingConfig& initial, const Horizon& horizon,
                         std::uint64_t seed, std::uint64_t record_every) {
  TasepSimulator simulator(initial, seed);
  return run_gillespie<TasepSimulator, TasepRun>(
      simulator, horizon, seed, record_every,
      [](const RingConfig& u) { return u.encode(); });
}

MultilineRun gillespie_multiline(const multiline::MultiLineRing& initial,
                                 const Horizon& horizon, std::uint64_t seed,
                                 std::uint64_t record_every) {
  MultilineSimulator simulator(initial, seed);
  return run_gillespie<MultilineSimulator, MultilineRun>(
      simulator, horizon, seed, record_every,
      [](const multiline::MultiLineRing& x) { return x.encode(); });
}

multiline::MultiLineRing sample_uniform_stack(int n_sites,
                                              const std::vector<long>& line_counts,
                                              Rng& rng) {
  multiline::MultiLineRing stack(static_cast<int>(line_counts.size()), n_sites);
  std::vector<long> sites(static_cast<std::size_t>(n_sites));
  for (int m = 1; m <= stack.lines(); ++m) {
    long k = line_counts[static_cast<std::size_t>(m - 1)];
    if (k < 0 || k > n_sites) throw InfeasibleError("line count outside 0..N");
    std::iota(sites.begin(), sites.end(), 0L);
    // partial Fisher-Yates: the first k entries become the particle sites
    for (long i = 0; i < k; ++i) {
      long j = i + static_cast<long>(rng.below(static_cast<std::uint64_t>(n_sites - i)));
      std::swap(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(j)]);
      stack.set_particle(m, sites[static_cast<std::size_t>(i)], true);
    }
  }
  return stack;
}

RingConfig sample_stationary_ring(int n_sites, const Counts& p, Rng& rng) {
  if (p.total() > n_sites) throw InfeasibleError("counts exceed the ring size");
  multiline::MultiLineRing stack = sample_uniform_stack(n_sites, p.prefix(), rng);
  return multiline::assign_classes(stack).bottom();
}

RingConfig sample_stationary_ring(int n_sites, const Counts& p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_stationary_ring(n_sites, p, rng);
}

namespace {

void check_rates(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("need at least one rate");
  double sum = 0;
  for (double l : lambdas) {
    if (!(l > 0)) throw InfeasibleError("rates must be positive");
    sum += l;
  }
  if (!(sum < 1)) throw InfeasibleError("rates must sum below 1");
}

}  // namespace

long default_burn_in(const std::vector<double>& lambdas) {
  check_rates(lambdas);
  double slack = 1 - std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  return static_cast<long>(std::ceil(50.0 / slack));
}

WindowConfig WindowSample::bottom_core() const {
  return classes.bottom().restrict_to(core_lo, core_hi);
}

const queueing::QueueState& WindowSample::queue_state_after(int level,
                                                            long site) const {
  const auto& states = queue_states.at(static_cast<std::size_t>(level - 1));
  long lo = classes.bottom().lo();
  if (site < lo || site > classes.bottom().hi())
    throw std::out_of_range("site outside sampled window");
  return states.at(static_cast<std::size_t>(site - lo));
}

WindowSample sample_window_detailed(long lo, long hi,
                                    const std::vector<double>& lambdas,
                                    long burn_in, Rng& rng) {
  check_rates(lambdas);
  if (burn_in < 0) throw std::invalid_argument("negative burn-in");
  if (hi < lo) throw ShapeError("empty window");
  int n = static_cast<int>(lambdas.size());
  long ext_lo = lo - burn_in;
  long length = hi - ext_lo + 1;

  // line m carries Bernoulli(lambda_1 + ... + lambda_m) particles
  multiline::MultiLineWindow stack(n, ext_lo, length);
  double cum = 0;
  for (int m = 1; m <= n; ++m) {
    cum += lambdas[static_cast<std::size_t>(m - 1)];
    for (long j = ext_lo; j <= hi; ++j)
      stack.set_particle(m, j, rng.bernoulli(cum));
  }

  WindowSample out;
  out.core_lo = lo;
  out.core_hi = hi;
  std::vector<WindowConfig> v;
  v.reserve(static_cast<std::size_t>(n));
  v.push_back(stack.line(1));
  for (int m = 2; m <= n; ++m) {
    queueing::WindowServiceDetail detail = queueing::serve_window_detail(
        v.back(), stack.line(m), queueing::QueueState(m - 1));
    v.push_back(std::move(detail.departures));
    out.queue_states.push_back(std::move(detail.states));
  }
  out.classes = multiline::MultiTypeWindow(std::move(v));
  return out;
}

WindowConfig sample_stationary_window(long half_width,
                                      const std::vector<double>& lambdas,
                                      long burn_in, std::uint64_t seed) {
  Rng rng(seed);
  return sample_window_detailed(-half_width, half_width, lambdas, burn_in, rng)
      .bottom_core();
}

}  // namespace mtasep::sim
