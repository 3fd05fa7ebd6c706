#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/errors.hpp"
#include "mtasep/queue.hpp"

using namespace mtasep;
using namespace mtasep::queueing;

namespace {

std::vector<long> totals(const std::vector<QueueState>& states) {
  std::vector<long> out;
  for (const auto& q : states) out.push_back(q.total());
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("queueing");

TEST_CASE("queue states are nested cumulative counts") {
  auto q = QueueState::of({1, 3});
  CHECK(q.levels() == 2);
  CHECK(q.at_most(1) == 1);
  CHECK(q.at_most(2) == 3);
  CHECK(q.total() == 3);
  CHECK(!q.is_empty());
  CHECK_THROWS(QueueState::of({2, 1}));
  CHECK_THROWS(QueueState::of({-1}));
}

TEST_CASE("one queue slot") {
  SUBCASE("arriving customer departs immediately") {
    auto step = step_queue(QueueState(1), ClassValue::of(1), true);
    CHECK(step.state.total() == 0);
    CHECK(step.departure.klass() == 1);
  }
  SUBCASE("waiting class-2 customer departs") {
    auto step = step_queue(QueueState::of({0, 1}), ClassValue::hole(), true);
    CHECK(step.state == QueueState::of({0, 0}));
    CHECK(step.departure.klass() == 2);
  }
  SUBCASE("unused service departs as the extra class") {
    auto step = step_queue(QueueState(1), ClassValue::hole(), true);
    CHECK(step.state.total() == 0);
    CHECK(step.departure.klass() == 2);
  }
  SUBCASE("no service leaves a hole") {
    auto step = step_queue(QueueState(1), ClassValue::of(1), false);
    CHECK(step.state.total() == 1);
    CHECK(step.departure.is_hole());
  }
  SUBCASE("arrival class above the level count is rejected") {
    CHECK_THROWS(step_queue(QueueState(1), ClassValue::of(2), true));
  }
  SUBCASE("nestedness is preserved") {
    auto q = QueueState::of({1, 2});
    for (int a : {1, 2, 0, 2, 0, 1}) {
      auto step = step_queue(q, ClassValue::decode(a), a % 2 == 0);
      q = step.state;
      for (int k = 1; k < q.levels(); ++k) CHECK(q.at_most(k) <= q.at_most(k + 1));
    }
  }
}

TEST_CASE("queue lengths along a window") {
  auto a = WindowConfig::decode(0, {1, 0, 1, 1}, 1);
  auto s = WindowConfig::decode(0, {0, 1, 1, 0}, 1);
  CHECK(totals(queue_lengths_window(a, s, QueueState(1))) ==
        std::vector<long>{1, 0, 0, 1});

  auto none = WindowConfig::decode(0, {0, 0, 0, 0}, 1);
  CHECK(totals(queue_lengths_window(none, s, QueueState(1))) ==
        std::vector<long>{0, 0, 0, 0});

  auto two = WindowConfig::decode(0, {1, 1}, 1);
  auto idle = WindowConfig::decode(0, {0, 0}, 1);
  CHECK(totals(queue_lengths_window(two, idle, QueueState(1))) ==
        std::vector<long>{1, 2});
}

TEST_CASE("queue lengths around a ring") {
  auto a = RingConfig::decode({2, 1, 0, 0, 0}, 2);
  auto s = RingConfig::decode({0, 1, 0, 1, 0}, 1);
  auto states = queue_lengths_ring(a, s);
  std::vector<long> level1, level2;
  for (const auto& q : states) {
    level1.push_back(q.at_most(1));
    level2.push_back(q.at_most(2));
  }
  CHECK(level1 == std::vector<long>{0, 0, 0, 0, 0});
  CHECK(level2 == std::vector<long>{1, 1, 1, 0, 0});

  auto none = RingConfig::decode({0, 0, 0, 0, 0}, 2);
  CHECK(totals(queue_lengths_ring(none, s)) == std::vector<long>{0, 0, 0, 0, 0});

  auto one = RingConfig::decode({0, 1, 0}, 1);
  auto svc = RingConfig::decode({0, 1, 0}, 1);
  CHECK(totals(queue_lengths_ring(one, svc)) == std::vector<long>{0, 0, 0});

  auto heavy = RingConfig::decode({1, 1, 0}, 1);
  CHECK_THROWS_AS(queue_lengths_ring(heavy, svc), InfeasibleError);
}

TEST_CASE("ring queue states satisfy the slot recurrence") {
  auto a = RingConfig::decode({2, 1, 0, 2, 0, 0}, 2);
  auto s = RingConfig::decode({0, 1, 1, 0, 1, 1}, 1);
  auto states = queue_lengths_ring(a, s);
  for (long j = 0; j < a.size(); ++j) {
    auto prev = states[static_cast<std::size_t>(a.index(j - 1))];
    auto step = step_queue(prev, a.at(j), s.at(j).is_particle());
    CHECK(step.state == states[static_cast<std::size_t>(j)]);
  }
}

TEST_CASE("collapse walks arrivals to free services") {
  CHECK(collapse_ring(4, {0}, {1, 3}) == std::vector<long>{1});
  CHECK(collapse_ring(4, {1, 3}, {1, 3}) == std::vector<long>{1, 3});
  CHECK(collapse_ring(4, {3}, {1, 2}) == std::vector<long>{1});
  CHECK_THROWS_AS(collapse_ring(4, {0, 1}, {2}), InfeasibleError);
}

TEST_CASE("collapse is independent of the processing order") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + static_cast<int>(gen() % 6);
    std::vector<long> arrivals, services;
    for (long i = 0; i < n; ++i) {
      if (gen() % 3 == 0) arrivals.push_back(i);
      if (gen() % 2 == 0) services.push_back(i);
    }
    if (arrivals.size() > services.size()) continue;
    auto base = collapse_ring(n, arrivals, services);
    auto shuffled = arrivals;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(collapse_ring(n, shuffled, services) == base);
  }
}

TEST_CASE("serving a ring") {
  auto a = RingConfig::decode({2, 1, 0, 0, 0}, 2);
  auto s = RingConfig::decode({0, 1, 0, 1, 0}, 1);
  CHECK(serve_ring(a, s).encode() == std::vector<int>{0, 1, 0, 2, 0});

  auto none = RingConfig::decode({0, 0, 0, 0, 0}, 2);
  CHECK(serve_ring(none, s).encode() == std::vector<int>{0, 3, 0, 3, 0});

  auto late = RingConfig::decode({0, 0, 0, 1}, 1);
  auto single = RingConfig::decode({0, 1, 0, 0}, 1);
  CHECK(serve_ring(late, single).encode() == std::vector<int>{0, 1, 0, 0});
}

TEST_CASE("collapse and recurrence routes agree") {
  auto a = RingConfig::decode({2, 1, 0, 2, 0, 0}, 2);
  auto s = RingConfig::decode({0, 1, 1, 0, 1, 1}, 1);
  CHECK(serve_ring(a, s) == serve_ring_by_recurrence(a, s));
}

TEST_CASE("per-level projection of the departure process") {
  auto a = RingConfig::decode({2, 1, 0, 2, 0, 0}, 2);
  auto s = RingConfig::decode({0, 1, 1, 0, 1, 1}, 1);
  auto d = serve_ring(a, s);
  std::vector<long> service_sites;
  for (long i = 0; i < s.size(); ++i)
    if (s.at(i).is_particle()) service_sites.push_back(i);
  for (int k = 1; k <= 2; ++k) {
    std::vector<long> low_arrivals, low_departures;
    for (long i = 0; i < a.size(); ++i) {
      if (a.at(i).is_particle() && a.at(i).klass() <= k) low_arrivals.push_back(i);
      if (d.at(i).is_particle() && d.at(i).klass() <= k) low_departures.push_back(i);
    }
    auto collapsed = collapse_ring(a.size(), low_arrivals, service_sites);
    std::sort(collapsed.begin(), collapsed.end());
    CHECK(collapsed == low_departures);
  }
}

TEST_CASE("departures conserve class counts") {
  auto a = RingConfig::decode({2, 1, 0, 2, 0, 0}, 2);
  auto s = RingConfig::decode({0, 1, 1, 0, 1, 1}, 1);
  auto d = serve_ring(a, s);
  auto counts = class_counts(d).per_class();
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 2);
  CHECK(counts[2] == 4 - 3);  // unused services
}

TEST_CASE("serving a window") {
  auto a = WindowConfig::decode(0, {1, 0, 1, 1}, 1);
  auto s = WindowConfig::decode(0, {0, 1, 1, 0}, 1);
  auto served = serve_window(a, s, QueueState(1));
  CHECK(served.departures.encode() == std::vector<int>{0, 1, 1, 0});
  CHECK(served.final_state.total() == 1);

  auto none = WindowConfig::decode(0, {0, 0, 0, 0}, 1);
  CHECK(serve_window(none, s, QueueState(1)).departures.encode() ==
        std::vector<int>{0, 2, 2, 0});

  auto a2 = WindowConfig::decode(0, {2, 1}, 2);
  auto s2 = WindowConfig::decode(0, {1, 1}, 1);
  CHECK(serve_window(a2, s2, QueueState(2)).departures.encode() ==
        std::vector<int>{2, 1});
}

TEST_CASE("service process of a departure process") {
  CHECK(services_of(RingConfig::decode({1, 3, 0}, 3)).encode() ==
        std::vector<int>{1, 1, 0});
  CHECK(services_of(RingConfig::decode({0, 0, 0}, 3)).encode() ==
        std::vector<int>{0, 0, 0});
  CHECK(services_of(RingConfig::decode({2, 2, 1, 0, 3}, 3)).encode() ==
        std::vector<int>{1, 1, 1, 0, 1});
}

TEST_CASE("stripping unused services") {
  CHECK(strip_unused(RingConfig::decode({1, 3, 0}, 3)).encode() ==
        std::vector<int>{1, 0, 0});
  CHECK(strip_unused(RingConfig::decode({3, 0, 1}, 3)).encode() ==
        std::vector<int>{0, 0, 1});
  CHECK(strip_unused(RingConfig::decode({1, 3, 0}, 3)).n_classes() == 2);
}

TEST_CASE("serving the stripped departures returns the departures") {
  auto d = RingConfig::decode({2, 0, 1, 3, 0, 2}, 3);
  CHECK(serve_ring(strip_unused(d), services_of(d)) == d);
}

TEST_CASE("stationary ratio of the single-class queue") {
  CHECK(stationary_queue_ratio(0.2, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(stationary_queue_ratio(0.1, 0.9) ==
        doctest::Approx(0.1 * 0.1 / (0.9 * 0.9)).epsilon(1e-12));
  CHECK_THROWS(stationary_queue_ratio(0.5, 0.2));
  CHECK_THROWS(stationary_queue_ratio(0.0, 0.5));
}

TEST_SUITE_END();
