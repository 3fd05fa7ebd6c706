#include "mtasep/queue.hpp"

#include <algorithm>
#include <string>

namespace mtasep::queueing {

namespace {

void check_binary(int n_classes, const char* what) {
  if (n_classes != 1)
    throw ShapeError(std::string(what) + " must be a one-class configuration");
}

void check_arrival(ClassValue arrival, int levels) {
  if (arrival.is_particle() && arrival.klass() > levels)
    throw std::domain_error("arrival class exceeds queue levels");
}

long count_particles(const std::vector<ClassValue>& sites) {
  long c = 0;
  for (ClassValue v : sites)
    if (v.is_particle()) ++c;
  return c;
}

}  // namespace

QueueState QueueState::of(std::vector<long> cumulative) {
  long prev = 0;
  for (long v : cumulative) {
    if (v < prev) throw std::invalid_argument("queue counts must be nested");
    prev = v;
  }
  if (!cumulative.empty() && cumulative.front() < 0)
    throw std::invalid_argument("queue counts must be nonnegative");
  QueueState s(static_cast<int>(cumulative.size()));
  s.q_ = std::move(cumulative);
  return s;
}

long QueueState::at_most(int k) const {
  if (k < 1 || k > levels()) throw std::out_of_range("queue level out of range");
  return q_[static_cast<std::size_t>(k - 1)];
}

QueueStep step_queue(const QueueState& state, ClassValue arrival, bool service) {
  check_arrival(arrival, state.levels());
  int m = state.levels();
  ClassValue departure = ClassValue::hole();
  if (service) {
    int k = m + 1;  // unused service unless someone is there to take it
    for (int c = 1; c <= m; ++c) {
      if (state.at_most(c) > 0 || (arrival.is_particle() && arrival.klass() <= c)) {
        k = c;
        break;
      }
    }
    departure = ClassValue::of(k);
  }
  std::vector<long> next(state.cumulative());
  for (int c = 1; c <= m; ++c) {
    long v = next[static_cast<std::size_t>(c - 1)];
    if (arrival.is_particle() && arrival.klass() <= c) ++v;
    if (service) --v;
    next[static_cast<std::size_t>(c - 1)] = std::max(v, 0L);
  }
  return QueueStep{QueueState::of(std::move(next)), departure};
}

std::vector<QueueState> queue_lengths_window(const WindowConfig& arrivals,
                                             const WindowConfig& services,
                                             const QueueState& init) {
  check_binary(services.n_classes(), "service process");
  if (arrivals.lo() != services.lo() || arrivals.size() != services.size())
    throw ShapeError("arrival and service windows differ");
  if (init.levels() != arrivals.n_classes())
    throw ShapeError("queue levels differ from arrival classes");
  std::vector<QueueState> out;
  out.reserve(static_cast<std::size_t>(arrivals.size()));
  QueueState q = init;
  for (long j = arrivals.lo(); j <= arrivals.hi(); ++j) {
    q = step_queue(q, arrivals.at(j), services.at(j).is_particle()).state;
    out.push_back(q);
  }
  return out;
}

std::vector<QueueState> queue_lengths_ring(const RingConfig& arrivals,
                                           const RingConfig& services) {
  check_binary(services.n_classes(), "service process");
  if (arrivals.size() != services.size())
    throw ShapeError("arrival and service rings differ");
  int n = arrivals.size();
  int m = arrivals.n_classes();
  long n_services = count_particles(services.sites());
  for (int k = 1; k <= m; ++k) {
    long n_arrivals = 0;
    for (ClassValue v : arrivals.sites())
      if (v.is_particle() && v.klass() <= k) ++n_arrivals;
    if (n_arrivals > n_services)
      throw InfeasibleError("more arrivals of class <= " + std::to_string(k) +
                            " than services");
  }
  std::vector<QueueState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) {
    std::vector<long> q(static_cast<std::size_t>(m), 0);
    for (int k = 1; k <= m; ++k) {
      long best = 0, net = 0;
      for (long len = 1; len <= n; ++len) {
        ClassValue a = arrivals.at(j - len + 1);
        if (a.is_particle() && a.klass() <= k) ++net;
        if (services.at(j - len + 1).is_particle()) --net;
        best = std::max(best, net);
      }
      q[static_cast<std::size_t>(k - 1)] = best;
    }
    out.push_back(QueueState::of(std::move(q)));
  }
  return out;
}

std::vector<long> collapse_ring(int n_sites, const std::vector<long>& arrivals,
                                const std::vector<long>& services) {
  std::vector<char> is_service(static_cast<std::size_t>(n_sites), 0);
  std::vector<char> is_arrival(static_cast<std::size_t>(n_sites), 0);
  std::vector<char> used(static_cast<std::size_t>(n_sites), 0);
  auto wrap = [n_sites](long i) {
    long r = i % n_sites;
    return static_cast<std::size_t>(r < 0 ? r + n_sites : r);
  };
  for (long s : services) {
    if (is_service[wrap(s)]) throw std::invalid_argument("duplicate service site");
    is_service[wrap(s)] = 1;
  }
  for (long a : arrivals) {
    if (is_arrival[wrap(a)]) throw std::invalid_argument("duplicate arrival site");
    is_arrival[wrap(a)] = 1;
  }
  if (arrivals.size() > services.size())
    throw InfeasibleError("more arrivals than services");
  std::vector<long> out;
  out.reserve(arrivals.size());
  for (long a : arrivals) {
    long placed = -1;
    for (long step = 0; step < n_sites; ++step) {
      std::size_t site = wrap(a + step);
      if (is_service[site] && !used[site]) {
        used[site] = 1;
        placed = static_cast<long>(site);
        break;
      }
    }
    if (placed < 0) throw InfeasibleError("no free service site for arrival");
    out.push_back(placed);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RingConfig serve_ring(const RingConfig& arrivals, const RingConfig& services) {
  check_binary(services.n_classes(), "service process");
  if (arrivals.size() != services.size())
    throw ShapeError("arrival and service rings differ");
  int n = arrivals.size();
  int m = arrivals.n_classes();
  std::vector<long> service_sites;
  for (long i = 0; i < n; ++i)
    if (services.at(i).is_particle()) service_sites.push_back(i);
  if (class_counts(arrivals).total() > static_cast<long>(service_sites.size()))
    throw InfeasibleError("more arrivals than services");

  RingConfig departures(n, m + 1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (int r = 1; r <= m; ++r) {
    std::vector<long> class_arrivals;
    for (long i = 0; i < n; ++i) {
      ClassValue v = arrivals.at(i);
      if (v.is_particle() && v.klass() == r) class_arrivals.push_back(i);
    }
    std::vector<long> free_sites;
    for (long s : service_sites)
      if (!used[static_cast<std::size_t>(s)]) free_sites.push_back(s);
    for (long d : collapse_ring(n, class_arrivals, free_sites)) {
      used[static_cast<std::size_t>(d)] = 1;
      departures.set(d, ClassValue::of(r));
    }
  }
  for (long s : service_sites)
    if (!used[static_cast<std::size_t>(s)]) departures.set(s, ClassValue::of(m + 1));
  return departures;
}

RingConfig serve_ring_by_recurrence(const RingConfig& arrivals,
                                    const RingConfig& services) {
  std::vector<QueueState> q = queue_lengths_ring(arrivals, services);
  int n = arrivals.size();
  int m = arrivals.n_classes();
  if (class_counts(arrivals).total() > count_particles(services.sites()))
    throw InfeasibleError("more arrivals than services");
  RingConfig departures(n, m + 1);
  for (long j = 0; j < n; ++j) {
    if (!services.at(j).is_particle()) continue;
    const QueueState& prev = q[static_cast<std::size_t>(arrivals.index(j - 1))];
    ClassValue a = arrivals.at(j);
    int k = m + 1;
    for (int c = 1; c <= m; ++c) {
      if (prev.at_most(c) > 0 || (a.is_particle() && a.klass() <= c)) {
        k = c;
        break;
      }
    }
    departures.set(j, ClassValue::of(k));
  }
  return departures;
}

WindowService serve_window(const WindowConfig& arrivals,
                           const WindowConfig& services,
                           const QueueState& init) {
  WindowServiceDetail detail = serve_window_detail(arrivals, services, init);
  QueueState last = detail.states.empty() ? init : detail.states.back();
  return WindowService{std::move(detail.departures), std::move(last)};
}

WindowServiceDetail serve_window_detail(const WindowConfig& arrivals,
                                        const WindowConfig& services,
                                        const QueueState& init) {
  check_binary(services.n_classes(), "service process");
  if (arrivals.lo() != services.lo() || arrivals.size() != services.size())
    throw ShapeError("arrival and service windows differ");
  if (init.levels() != arrivals.n_classes())
    throw ShapeError("queue levels differ from arrival classes");
  int m = arrivals.n_classes();
  WindowServiceDetail out{WindowConfig(arrivals.lo(), arrivals.size(), m + 1), {}};
  out.states.reserve(static_cast<std::size_t>(arrivals.size()));
  QueueState q = init;
  for (long j = arrivals.lo(); j <= arrivals.hi(); ++j) {
    QueueStep step = step_queue(q, arrivals.at(j), services.at(j).is_particle());
    out.departures.set(j, step.departure);
    q = std::move(step.state);
    out.states.push_back(q);
  }
  return out;
}

RingConfig services_of(const RingConfig& departures) {
  RingConfig out(departures.size(), 1);
  for (long j = 0; j < departures.size(); ++j)
    if (departures.at(j).is_particle()) out.set(j, ClassValue::of(1));
  return out;
}

WindowConfig services_of(const WindowConfig& departures) {
  WindowConfig out(departures.lo(), departures.size(), 1);
  for (long j = departures.lo(); j <= departures.hi(); ++j)
    if (departures.at(j).is_particle()) out.set(j, ClassValue::of(1));
  return out;
}

RingConfig strip_unused(const RingConfig& departures) {
  int top = departures.n_classes();
  if (top < 1) throw std::domain_error("no class to strip");
  RingConfig out(departures.size(), top - 1);
  for (long j = 0; j < departures.size(); ++j) {
    ClassValue v = departures.at(j);
    if (v.is_particle() && v.klass() < top) out.set(j, v);
  }
  return out;
}

WindowConfig strip_unused(const WindowConfig& departures) {
  int top = departures.n_classes();
  if (top < 1) throw std::domain_error("no class to strip");
  WindowConfig out(departures.lo(), departures.size(), top - 1);
  for (long j = departures.lo(); j <= departures.hi(); ++j) {
    ClassValue v = departures.at(j);
    if (v.is_particle() && v.klass() < top) out.set(j, v);
  }
  return out;
}

double stationary_queue_ratio(double arrival_rate, double service_rate) {
  if (!(arrival_rate > 0) || !(service_rate > 0) || arrival_rate >= 1 ||
      service_rate > 1 || arrival_rate >= service_rate)
    throw std::domain_error("need 0 < arrival < service <= 1");
  return arrival_rate * (1 - service_rate) / ((1 - arrival_rate) * service_rate);
}

}  // namespace mtasep::queueing
