#include <benchmark/benchmark.h>

#include <vector>

#include "mtasep/config.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/queue.hpp"
#include "mtasep/rng.hpp"
#include "mtasep/simulate.hpp"

namespace {

using namespace mtasep;

RingConfig random_arrivals(int n_sites, int n_classes, sim::Rng& rng) {
  RingConfig a(n_sites, n_classes);
  for (long i = 0; i < n_sites; ++i)
    if (rng.bernoulli(0.4))
      a.set(i, ClassValue::of(1 + static_cast<int>(rng.below(
                                      static_cast<std::uint64_t>(n_classes)))));
  return a;
}

RingConfig random_services(int n_sites, double rate, sim::Rng& rng) {
  RingConfig s(n_sites, 1);
  for (long i = 0; i < n_sites; ++i)
    if (rng.bernoulli(rate)) s.set(i, ClassValue::of(1));
  return s;
}

void bench_serve_ring_collapse(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sim::Rng rng(1);
  auto a = random_arrivals(n, 3, rng);
  auto s = random_services(n, 0.9, rng);
  while (class_counts(a).total() > class_counts(s).total())
    s = random_services(n, 0.9, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(queueing::serve_ring(a, s));
}
BENCHMARK(bench_serve_ring_collapse)->Arg(32)->Arg(128);

void bench_serve_ring_recurrence(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sim::Rng rng(1);
  auto a = random_arrivals(n, 3, rng);
  auto s = random_services(n, 0.9, rng);
  while (class_counts(a).total() > class_counts(s).total())
    s = random_services(n, 0.9, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(queueing::serve_ring_by_recurrence(a, s));
}
BENCHMARK(bench_serve_ring_recurrence)->Arg(32)->Arg(128);

void bench_assign_classes(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sim::Rng rng(2);
  std::vector<long> counts;
  for (int m = 1; m <= 5; ++m) counts.push_back(n * m / 8);
  auto x = sim::sample_uniform_stack(n, counts, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(multiline::assign_classes(x));
}
BENCHMARK(bench_assign_classes)->Arg(32)->Arg(128);

void bench_forward_step(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  sim::Rng rng(3);
  auto x = sim::sample_uniform_stack(n, {n / 4, n / 3, n / 2}, rng);
  long i = 0;
  for (auto _ : state) {
    auto step = multiline::forward_step(x, i);
    benchmark::DoNotOptimize(step);
    i = (i + 1) % n;
  }
}
BENCHMARK(bench_forward_step)->Arg(32)->Arg(256);

void bench_gillespie_events(benchmark::State& state) {
  auto initial = RingConfig::decode({1, 2, 2, 0, 0, 1, 0, 2, 0, 0}, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sim::gillespie_tasep(initial, sim::Horizon::events(10'000), 7));
}
BENCHMARK(bench_gillespie_events);

void bench_window_sample(benchmark::State& state) {
  sim::Rng rng(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sim::sample_window_detailed(-200, 200, {0.2, 0.2, 0.2}, 100, rng));
}
BENCHMARK(bench_window_sample);

}  // namespace

BENCHMARK_MAIN();
