#pragma once

// Discrete-time multiclass priority queues. A queue with m arrival classes
// is summarised by the nested counts (Q^{<=1}, ..., Q^{<=m}); feeding an
// arrival process through a service process yields the departure process,
// where class m+1 marks a service slot no customer used.

#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/errors.hpp"

namespace mtasep::queueing {

class QueueState {
 public:
  explicit QueueState(int levels) : q_(static_cast<std::size_t>(levels), 0) {}
  // Nested cumulative counts; must be nonnegative and nondecreasing.
  static QueueState of(std::vector<long> cumulative);

  int levels() const { return static_cast<int>(q_.size()); }
  long at_most(int k) const;  // customers of class <= k (1-based)
  long total() const { return q_.empty() ? 0 : q_.back(); }
  bool is_empty() const { return total() == 0; }
  const std::vector<long>& cumulative() const { return q_; }

  friend bool operator==(const QueueState&, const QueueState&) = default;

 private:
  std::vector<long> q_;
};

struct QueueStep {
  QueueState state;
  ClassValue departure;  // hole when the slot has no service
};

// One slot: an arrival (class <= levels, or hole) and a service flag.
// The departing class is the lowest k with a waiting or arriving customer
// of class <= k; an unused service departs as class levels + 1.
QueueStep step_queue(const QueueState& state, ClassValue arrival, bool service);

// Left-to-right queue states after each slot, starting from `init`.
// `services` must be binary (one class).
std::vector<QueueState> queue_lengths_window(const WindowConfig& arrivals,
                                             const WindowConfig& services,
                                             const QueueState& init);

// Exact queue states on the ring: Q_j^{<=k} is the supremum over cyclic
// intervals [i, j] of (arrivals of class <= k) - (services), clamped at 0.
// Requires, per level, no more arrivals than services.
std::vector<QueueState> queue_lengths_ring(const RingConfig& arrivals,
                                           const RingConfig& services);

// Single-class collapse: walk each arrival cyclically rightward to the first
// service site not yet used. The result is a site set independent of the
// processing order of `arrivals`.
std::vector<long> collapse_ring(int n_sites, const std::vector<long>& arrivals,
                                const std::vector<long>& services);

// Departure process on the ring via iterated collapse, class by class.
RingConfig serve_ring(const RingConfig& arrivals, const RingConfig& services);

// Same map computed through queue_lengths_ring and the departure rule.
RingConfig serve_ring_by_recurrence(const RingConfig& arrivals,
                                    const RingConfig& services);

struct WindowService {
  WindowConfig departures;
  QueueState final_state;
};

struct WindowServiceDetail {
  WindowConfig departures;
  std::vector<QueueState> states;  // after each slot, left to right
};

WindowService serve_window(const WindowConfig& arrivals,
                           const WindowConfig& services,
                           const QueueState& init);
WindowServiceDetail serve_window_detail(const WindowConfig& arrivals,
                                        const WindowConfig& services,
                                        const QueueState& init);

// The service process behind a departure process: a service wherever some
// class (used or unused) departed.
RingConfig services_of(const RingConfig& departures);
WindowConfig services_of(const WindowConfig& departures);

// Replace the top class (unused services) by holes, recovering an arrival
// process with one class fewer.
RingConfig strip_unused(const RingConfig& departures);
WindowConfig strip_unused(const WindowConfig& departures);

// Stationary ratio P(Q = k+1)/P(Q = k) of the single-class slotted queue
// with Bernoulli(arrival_rate) arrivals and Bernoulli(service_rate) services.
double stationary_queue_ratio(double arrival_rate, double service_rate);

}  // namespace mtasep::queueing
