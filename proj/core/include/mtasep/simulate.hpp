#pragma once

// Continuous-time simulation and stationary samplers. Every site carries a
// rate-1 bell; the whole system steps at rate N with a uniformly chosen
// site, so holding times weight the occupation measure.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/rng.hpp"

namespace mtasep::sim {

struct Event {
  double t = 0;
  long site = 0;
};

struct Snapshot {
  double t = 0;
  std::vector<int> state;
};

struct Trace {
  std::uint64_t seed = 0;
  std::vector<Event> events;
  std::vector<Snapshot> snapshots;
  std::vector<int> final_state;
};

struct EmpiricalDistribution {
  std::map<std::vector<int>, double> occupation;
  double total_time = 0;

  void add(const std::vector<int>& state, double weight) {
    occupation[state] += weight;
    total_time += weight;
  }
  std::map<std::vector<int>, double> normalized() const;
};

struct Horizon {
  std::optional<std::uint64_t> max_events;
  std::optional<double> max_time;
  static Horizon events(std::uint64_t n) { return Horizon{n, std::nullopt}; }
  static Horizon time(double t) { return Horizon{std::nullopt, t}; }
};

// Exclusion dynamics: a bell at site i sorts the pair (i-1, i).
class TasepSimulator {
 public:
  TasepSimulator(RingConfig initial, std::uint64_t seed);
  Event step();               // apply the next bell
  void advance_to(double t);  // play out all bells before time t
  const RingConfig& state() const { return state_; }
  double time() const { return time_; }
  std::uint64_t events() const { return events_; }
  double next_event_time();

 private:
  void ensure_pending();
  RingConfig state_;
  Rng rng_;
  double time_ = 0;
  std::uint64_t events_ = 0;
  bool has_pending_ = false;
  Event pending_;
};

// Line-stack dynamics: a bell on the bottom line cascades upward.
class MultilineSimulator {
 public:
  MultilineSimulator(multiline::MultiLineRing initial, std::uint64_t seed);
  Event step();
  void advance_to(double t);
  const multiline::MultiLineRing& state() const { return state_; }
  double time() const { return time_; }
  std::uint64_t events() const { return events_; }
  double next_event_time();

 private:
  void ensure_pending();
  multiline::MultiLineRing state_;
  Rng rng_;
  double time_ = 0;
  std::uint64_t events_ = 0;
  bool has_pending_ = false;
  Event pending_;
};

struct TasepRun {
  Trace trace;
  EmpiricalDistribution occupation;
  RingConfig final;
};

struct MultilineRun {
  Trace trace;
  EmpiricalDistribution occupation;
  multiline::MultiLineRing final;
};

// record_every = 0 disables snapshots.
TasepRun gillespie_tasep(const RingConfig& initial, const Horizon& horizon,
                         std::uint64_t seed, std::uint64_t record_every = 0);
MultilineRun gillespie_multiline(const multiline::MultiLineRing& initial,
                                 const Horizon& horizon, std::uint64_t seed,
                                 std::uint64_t record_every = 0);

// Uniform line stack with the given per-line particle counts.
multiline::MultiLineRing sample_uniform_stack(int n_sites,
                                              const std::vector<long>& line_counts,
                                              Rng& rng);

// One draw from the exact stationary law on the ring: uniform stack with
// counts (q_1..q_n), classes assigned through the tandem queues.
RingConfig sample_stationary_ring(int n_sites, const Counts& p, Rng& rng);
RingConfig sample_stationary_ring(int n_sites, const Counts& p, std::uint64_t seed);

// Slots to discard before the window of interest; grows with total density.
long default_burn_in(const std::vector<double>& lambdas);

// Stationary window sample with i.i.d. Bernoulli lines run through the
// tandem queues from empty states left of the window.
struct WindowSample {
  multiline::MultiTypeWindow classes;  // extended window, lines v_1..v_n
  long core_lo = 0;
  long core_hi = -1;
  // queue states after each site, per level m = 1..n-1
  std::vector<std::vector<queueing::QueueState>> queue_states;

  const WindowConfig& bottom_extended() const { return classes.bottom(); }
  WindowConfig bottom_core() const;
  const queueing::QueueState& queue_state_after(int level, long site) const;
};

WindowSample sample_window_detailed(long lo, long hi,
                                    const std::vector<double>& lambdas,
                                    long burn_in, Rng& rng);

// Bottom line over [-half_width, half_width].
WindowConfig sample_stationary_window(long half_width,
                                      const std::vector<double>& lambdas,
                                      long burn_in, std::uint64_t seed);

}  // namespace mtasep::sim
