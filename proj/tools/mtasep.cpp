// Command-line front end: exact weight tables, stationary samplers,
// invariant suites, statistical checks, and trace dumps.
//
// Exit codes: 0 ok, 2 verification failed, 3 inconclusive, 64 usage,
// 65 infeasible input.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtasep/config.hpp"
#include "mtasep/errors.hpp"
#include "mtasep/exact.hpp"
#include "mtasep/io.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/queue.hpp"
#include "mtasep/rng.hpp"
#include "mtasep/simulate.hpp"
#include "mtasep/stats.hpp"
#include "mtasep/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 2;
constexpr int kInconclusive = 3;
constexpr int kUsage = 64;
constexpr int kInfeasible = 65;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<long> parse_longs(const std::string& text, const char* flag) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& text, const char* flag) {
  std::vector<int> out;
  for (long v : parse_longs(text, flag)) out.push_back(static_cast<int>(v));
  return out;
}

// Canonical initial state: classes packed in order from site 0, holes after.
mtasep::RingConfig packed_ring(int n_sites, const mtasep::Counts& p) {
  if (p.total() > n_sites)
    throw mtasep::InfeasibleError("more particles than sites");
  mtasep::RingConfig u(n_sites, p.n());
  long site = 0;
  for (int r = 1; r <= p.n(); ++r)
    for (long c = 0; c < p.p(r); ++c)
      u.set(site++, mtasep::ClassValue::of(r));
  return u;
}

mtasep::multiline::MultiLineRing packed_stack(int n_sites,
                                              const std::vector<long>& counts) {
  mtasep::multiline::MultiLineRing x(static_cast<int>(counts.size()), n_sites);
  for (int m = 1; m <= x.lines(); ++m) {
    if (counts[m - 1] < 0 || counts[m - 1] > n_sites)
      throw mtasep::InfeasibleError("line count out of range");
    for (long i = 0; i < counts[m - 1]; ++i) x.set_particle(m, i, true);
  }
  return x;
}

int report_exit(const mtasep::stats::TestReport& report, std::ostream& out) {
  out << mtasep::io::to_json(report) << "\n";
  switch (report.outcome) {
    case mtasep::stats::Outcome::pass:
      return kOk;
    case mtasep::stats::Outcome::inconclusive:
      return kInconclusive;
    case mtasep::stats::Outcome::fail:
      break;
  }
  return kFailed;
}

int suite_exit(const std::string& name, const mtasep::verify::SuiteResult& r) {
  std::cout << name << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.cases
            << " cases)";
  if (!r.ok) std::cout << " " << r.detail;
  std::cout << "\n";
  return r.ok ? kOk : kFailed;
}

struct OutputFile {
  std::ofstream file;
  std::ostream& stream(const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw UsageError("cannot open output file " + path);
    return file;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-type exclusion dynamics on rings and line windows"};
  app.require_subcommand(1);

  std::function<int()> run;

  // Shared option storage; only the parsed leaf reads from it.
  int sites = 0;
  int classes = 0;
  int lines = 0;
  std::string counts_text;
  std::string rates_text;
  std::string string_text;
  std::string format = "json";
  std::string output_path;
  std::uint64_t seed = 0;
  long samples = 1;
  long steps = 1'000'000;
  long paths = 10'000;
  long window = 1000;
  long burnin = -1;
  long trials = 0;
  long width = 25;
  long left_sites = 2;
  long right_sites = 2;
  std::uint64_t cap = 10'000'000;
  std::uint64_t record_every = 0;
  std::optional<std::uint64_t> max_events;
  std::optional<double> max_time;
  bool check_balance = false;
  bool list_minimal = false;
  bool exhaustive = false;

  // ---- exact ------------------------------------------------------------
  auto* cmd_exact = app.add_subcommand(
      "exact", "enumerate the exact stationary weight table on a ring");
  cmd_exact->add_option("--sites", sites, "ring size N")->required();
  cmd_exact->add_option("--classes", classes, "number of classes n")->required();
  cmd_exact
      ->add_option("--counts", counts_text, "per-class particle counts p1,p2,...")
      ->required();
  cmd_exact->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_exact->add_flag("--check-balance", check_balance,
                      "verify global balance of the table (exit 2 on failure)");
  cmd_exact->add_flag("--list-minimal", list_minimal,
                      "append the minimal-weight states");
  cmd_exact->add_option("--cap", cap, "refuse enumerations larger than this");
  cmd_exact->add_option("--output", output_path, "write to a file instead of stdout");
  cmd_exact->callback([&] {
    run = [&]() -> int {
      auto counts = parse_longs(counts_text, "--counts");
      if (static_cast<int>(counts.size()) != classes)
        throw UsageError("--counts must list exactly --classes values");
      mtasep::Counts p(counts);
      auto dist = mtasep::exact::stationary_weights(sites, p, cap);
      mtasep::io::WeightTableOptions options;
      options.list_minimal = list_minimal;
      int code = kOk;
      if (check_balance) {
        options.balance_checked = true;
        options.balance_ok = mtasep::exact::verify_balance(dist);
        if (!options.balance_ok) code = kFailed;
      }
      OutputFile out;
      auto& os = out.stream(output_path);
      if (format == "csv") {
        mtasep::io::weights_to_csv(dist, os);
        if (check_balance)
          std::cerr << "balance: " << (options.balance_ok ? "ok" : "FAILED")
                    << "\n";
      } else {
        os << mtasep::io::weights_to_json(dist, options) << "\n";
      }
      return code;
    };
  });

  // ---- sample -----------------------------------------------------------
  auto* cmd_sample = app.add_subcommand(
      "sample", "draw from the exact stationary law");
  cmd_sample->require_subcommand(1);

  auto* sample_ring = cmd_sample->add_subcommand(
      "ring", "stationary draws on the ring, one configuration per line");
  sample_ring->add_option("--sites", sites, "ring size N")->required();
  sample_ring->add_option("--classes", classes, "number of classes n")->required();
  sample_ring->add_option("--counts", counts_text, "per-class counts p1,p2,...")
      ->required();
  sample_ring->add_option("--samples", samples, "number of draws");
  sample_ring->add_option("--seed", seed, "RNG seed");
  sample_ring->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sample_ring->add_option("--output", output_path, "write to a file");
  sample_ring->callback([&] {
    run = [&]() -> int {
      auto counts = parse_longs(counts_text, "--counts");
      if (static_cast<int>(counts.size()) != classes)
        throw UsageError("--counts must list exactly --classes values");
      mtasep::Counts p(counts);
      if (p.total() > sites)
        throw mtasep::InfeasibleError("counts exceed the ring size");
      mtasep::sim::Rng rng(seed);
      OutputFile out;
      auto& os = out.stream(output_path);
      for (long s = 0; s < samples; ++s) {
        auto u = mtasep::sim::sample_stationary_ring(sites, p, rng);
        os << (format == "csv" ? mtasep::io::encode_csv_line(u)
                               : mtasep::io::encode_line(u))
           << "\n";
      }
      return kOk;
    };
  });

  auto* sample_line = cmd_sample->add_subcommand(
      "line", "stationary draws on the window [-K, K]");
  sample_line
      ->add_option("--rates", rates_text, "per-class densities l1,l2,... (sum < 1)")
      ->required();
  sample_line->add_option("--window", window, "half-width K; output has 2K+1 sites");
  sample_line->add_option("--burnin", burnin,
                          "slots left of the window before recording "
                          "(default: chosen from the total density)");
  sample_line->add_option("--samples", samples, "number of draws");
  sample_line->add_option("--seed", seed, "RNG seed");
  sample_line->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sample_line->add_option("--output", output_path, "write to a file");
  sample_line->callback([&] {
    run = [&]() -> int {
      auto lambdas = parse_doubles(rates_text, "--rates");
      long burn = burnin >= 0 ? burnin : mtasep::sim::default_burn_in(lambdas);
      mtasep::sim::Rng rng(seed);
      OutputFile out;
      auto& os = out.stream(output_path);
      for (long s = 0; s < samples; ++s) {
        auto draw =
            mtasep::sim::sample_window_detailed(-window, window, lambdas, burn, rng);
        auto u = draw.bottom_core();
        os << (format == "csv" ? mtasep::io::encode_csv_line(u)
                               : mtasep::io::encode_line(u))
           << "\n";
      }
      return kOk;
    };
  });

  // ---- verify -----------------------------------------------------------
  auto* cmd_verify = app.add_subcommand(
      "verify", "run a structural invariant suite (exit 0 iff all cases pass)");
  cmd_verify->require_subcommand(1);

  auto add_sweep_flags = [&](CLI::App* sub) {
    sub->add_flag("--exhaustive", exhaustive, "sweep the full input space (default)");
    sub->add_option("--trials", trials, "sample this many random cases instead");
    sub->add_option("--seed", seed, "RNG seed for --trials");
  };

  auto* verify_bijection = cmd_verify->add_subcommand(
      "bijection", "one bell step is invertible on line stacks");
  verify_bijection->add_option("--sites", sites, "ring size N")->required();
  verify_bijection->add_option("--lines", lines, "stack height n")->required();
  add_sweep_flags(verify_bijection);
  verify_bijection->callback([&] {
    run = [&]() -> int {
      auto r = trials > 0
                   ? mtasep::verify::bijection_trials(sites, lines, trials, seed)
                   : mtasep::verify::bijection_exhaustive(sites, lines);
      return suite_exit("bijection", r);
    };
  });

  auto* verify_balance = cmd_verify->add_subcommand(
      "balance", "exact global balance of the enumerated weight table");
  verify_balance->add_option("--sites", sites, "ring size N")->required();
  verify_balance->add_option("--counts", counts_text, "per-class counts p1,p2,...")
      ->required();
  verify_balance->callback([&] {
    run = [&]() -> int {
      mtasep::Counts p(parse_longs(counts_text, "--counts"));
      return suite_exit("balance", mtasep::verify::balance_instance(sites, p));
    };
  });

  auto* verify_minimal = cmd_verify->add_subcommand(
      "minimal", "minimal-weight structure of the enumerated weight table");
  verify_minimal->add_option("--sites", sites, "ring size N")->required();
  verify_minimal->add_option("--counts", counts_text, "per-class counts p1,p2,...")
      ->required();
  verify_minimal->callback([&] {
    run = [&]() -> int {
      mtasep::Counts p(parse_longs(counts_text, "--counts"));
      return suite_exit("minimal", mtasep::verify::minimal_instance(sites, p));
    };
  });

  auto* verify_commutation = cmd_verify->add_subcommand(
      "commutation", "bells act on assigned lines as adjacent sorts");
  verify_commutation->add_option("--sites", sites, "ring size N")->required();
  verify_commutation->add_option("--lines", lines, "stack height n")->required();
  add_sweep_flags(verify_commutation);
  verify_commutation->callback([&] {
    run = [&]() -> int {
      auto r = trials > 0
                   ? mtasep::verify::commutation_trials(sites, lines, trials, seed)
                   : mtasep::verify::commutation_exhaustive(sites, lines);
      return suite_exit("commutation", r);
    };
  });

  auto* verify_queues = cmd_verify->add_subcommand(
      "queues", "queue recurrence vs collapse, service identity, uniqueness");
  verify_queues->add_option("--sites", sites, "ring size N")->required();
  verify_queues->add_option("--classes", lines, "maximum arrival classes")
      ->required();
  add_sweep_flags(verify_queues);
  verify_queues->callback([&] {
    run = [&]() -> int {
      int code = kOk;
      code = std::max(code, suite_exit("queue equivalence",
                                       mtasep::verify::queue_equivalence_exhaustive(
                                           sites, lines)));
      code = std::max(
          code, suite_exit("queue identity",
                           mtasep::verify::queue_identity_exhaustive(sites, lines)));
      code = std::max(code, suite_exit("queue uniqueness",
                                       mtasep::verify::queue_uniqueness_exhaustive(
                                           sites, lines)));
      return code;
    };
  });

  // ---- stats ------------------------------------------------------------
  auto* cmd_stats = app.add_subcommand(
      "stats", "statistical checks; emits a JSON report (exit 0 pass, 2 fail, "
               "3 inconclusive)");
  cmd_stats->require_subcommand(1);

  double arrival = 0.2;
  double service = 0.5;

  auto* stats_burke = cmd_stats->add_subcommand(
      "burke", "departures of the stationary slotted queue");
  stats_burke->add_option("--arrival", arrival, "arrival rate")->required();
  stats_burke->add_option("--service", service, "service rate")->required();
  stats_burke->add_option("--steps", steps, "slots to simulate");
  stats_burke->add_option("--seed", seed, "RNG seed");
  stats_burke->callback([&] {
    run = [&]() -> int {
      return report_exit(mtasep::stats::burke_test(arrival, service, steps, seed),
                         std::cout);
    };
  });

  auto* stats_qlen = cmd_stats->add_subcommand(
      "qlen", "stationary queue-length law of the two-class tandem stage");
  stats_qlen->add_option("--rates", rates_text, "class densities l1,l2")->required();
  stats_qlen->add_option("--steps", steps, "slots to simulate");
  stats_qlen->add_option("--seed", seed, "RNG seed");
  stats_qlen->callback([&] {
    run = [&]() -> int {
      auto lambdas = parse_doubles(rates_text, "--rates");
      if (lambdas.size() != 2) throw UsageError("--rates needs exactly l1,l2");
      return report_exit(
          mtasep::stats::queue_length_fit(lambdas[0], lambdas[1], steps, seed),
          std::cout);
    };
  });

  auto* stats_coupling = cmd_stats->add_subcommand(
      "coupling", "stationary/empty queue coupling: dominance and coalescence");
  stats_coupling->add_option("--rates", rates_text, "class densities l1,l2")
      ->required();
  stats_coupling->add_option("--window", window, "slots per path");
  stats_coupling->add_option("--paths", paths, "independent paths");
  stats_coupling->add_option("--seed", seed, "RNG seed");
  stats_coupling->callback([&] {
    run = [&]() -> int {
      auto lambdas = parse_doubles(rates_text, "--rates");
      if (lambdas.size() != 2) throw UsageError("--rates needs exactly l1,l2");
      return report_exit(mtasep::stats::coupling_experiment(lambdas[0], lambdas[1],
                                                            window, paths, seed),
                         std::cout);
    };
  });

  auto* stats_renewal = cmd_stats->add_subcommand(
      "renewal", "queues empty after every occurrence of a regenerating string");
  stats_renewal->add_option("--rates", rates_text, "class densities l1,...,ln")
      ->required();
  stats_renewal->add_option("--string", string_text, "string w1,w2,...")->required();
  stats_renewal->add_option("--window", window, "window length in sites");
  stats_renewal->add_option("--seed", seed, "RNG seed");
  stats_renewal->callback([&] {
    run = [&]() -> int {
      auto lambdas = parse_doubles(rates_text, "--rates");
      auto w = parse_ints(string_text, "--string");
      return report_exit(
          mtasep::stats::renewal_emptiness_check(lambdas, window, seed, w),
          std::cout);
    };
  });

  auto* stats_factorization = cmd_stats->add_subcommand(
      "factorization", "independence of the two sides of a regenerating string");
  stats_factorization->add_option("--rates", rates_text, "class densities")
      ->required();
  stats_factorization->add_option("--string", string_text, "string w1,w2,...")
      ->required();
  stats_factorization->add_option("--left", left_sites, "left cylinder sites");
  stats_factorization->add_option("--right", right_sites, "right cylinder sites");
  stats_factorization->add_option("--samples", samples, "window draws");
  stats_factorization->add_option("--seed", seed, "RNG seed");
  stats_factorization->callback([&] {
    run = [&]() -> int {
      auto lambdas = parse_doubles(rates_text, "--rates");
      auto w = parse_ints(string_text, "--string");
      return report_exit(
          mtasep::stats::factorization_test(lambdas, w, static_cast<int>(left_sites),
                                            static_cast<int>(right_sites), samples,
                                            seed),
          std::cout);
    };
  });

  auto* stats_independence = cmd_stats->add_subcommand(
      "independence", "hole pattern right of the origin vs the occupant there");
  stats_independence->add_option("--rates", rates_text, "class densities")
      ->required();
  stats_independence->add_option("--width", width, "window half-width (>= 5)");
  stats_independence->add_option("--samples", samples, "window draws");
  stats_independence->add_option("--seed", seed, "RNG seed");
  stats_independence->callback([&] {
    run = [&]() -> int {
      auto lambdas = parse_doubles(rates_text, "--rates");
      return report_exit(
          mtasep::stats::hole_independence_test(lambdas, width, samples, seed),
          std::cout);
    };
  });

  // ---- simulate ---------------------------------------------------------
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "continuous-time trace from the packed initial state");
  cmd_simulate->require_subcommand(1);

  auto add_horizon_flags = [&](CLI::App* sub) {
    auto* ev = sub->add_option("--events", max_events, "stop after this many bells");
    auto* tm = sub->add_option("--time", max_time, "stop at this time");
    ev->excludes(tm);
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--record-every", record_every,
                    "snapshot every k events (0 = only endpoints)");
    sub->add_option("--output", output_path, "write to a file");
  };

  auto pick_horizon = [&]() -> mtasep::sim::Horizon {
    if (max_time) return mtasep::sim::Horizon::time(*max_time);
    return mtasep::sim::Horizon::events(max_events.value_or(1000));
  };

  auto* simulate_tasep = cmd_simulate->add_subcommand(
      "tasep", "multi-type exclusion dynamics on the ring");
  simulate_tasep->add_option("--sites", sites, "ring size N")->required();
  simulate_tasep->add_option("--counts", counts_text, "per-class counts p1,p2,...")
      ->required();
  add_horizon_flags(simulate_tasep);
  simulate_tasep->callback([&] {
    run = [&]() -> int {
      mtasep::Counts p(parse_longs(counts_text, "--counts"));
      auto initial = packed_ring(sites, p);
      auto result =
          mtasep::sim::gillespie_tasep(initial, pick_horizon(), seed, record_every);
      OutputFile out;
      mtasep::io::trace_to_stream(result.trace, out.stream(output_path));
      return kOk;
    };
  });

  auto* simulate_multiline = cmd_simulate->add_subcommand(
      "multiline", "bell cascades on a stack of binary lines");
  simulate_multiline->add_option("--sites", sites, "ring size N")->required();
  simulate_multiline
      ->add_option("--counts", counts_text, "per-line particle counts q1,q2,...")
      ->required();
  add_horizon_flags(simulate_multiline);
  simulate_multiline->callback([&] {
    run = [&]() -> int {
      auto counts = parse_longs(counts_text, "--counts");
      auto initial = packed_stack(sites, counts);
      auto result = mtasep::sim::gillespie_multiline(initial, pick_horizon(), seed,
                                                     record_every);
      OutputFile out;
      mtasep::io::trace_to_stream(result.trace, out.stream(output_path));
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (!run) {
    std::cerr << app.help();
    return kUsage;
  }

  try {
    return run();
  } catch (const mtasep::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const mtasep::ResourceError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kInfeasible;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
