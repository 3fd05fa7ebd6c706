#include "mtasep/io.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mtasep::io {

namespace {

using nlohmann::json;

json config_json(const RingConfig& u) {
  return json{{"topology", "ring"},
              {"n_classes", u.n_classes()},
              {"sites", u.encode()}};
}

json config_json(const WindowConfig& u) {
  return json{{"topology", "window"},
              {"lo", u.lo()},
              {"n_classes", u.n_classes()},
              {"sites", u.encode()}};
}

}  // namespace

std::string to_json(const RingConfig& u) { return config_json(u).dump(); }

std::string to_json(const WindowConfig& u) { return config_json(u).dump(); }

std::string to_json(const multiline::MultiLineRing& x) {
  json lines = json::array();
  for (int m = 1; m <= x.lines(); ++m) lines.push_back(x.line(m).encode());
  return json{{"lines", lines}}.dump();
}

std::string to_json(const stats::TestReport& report) {
  std::string notes = report.notes;
  if (report.outcome == stats::Outcome::inconclusive) {
    notes = notes.empty() ? "inconclusive" : "inconclusive: " + notes;
  }
  json j{{"name", report.name},
         {"statistic", report.statistic},
         {"threshold", report.threshold},
         {"pass", report.passed()},
         {"samples", report.samples},
         {"notes", notes}};
  if (!report.metrics.empty()) {
    json metrics = json::object();
    for (const auto& [key, value] : report.metrics) metrics[key] = value;
    j["metrics"] = metrics;
  }
  return j.dump();
}

RingConfig ring_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("topology").get<std::string>() != "ring")
    throw ShapeError("expected a ring configuration");
  return RingConfig::decode(j.at("sites").get<std::vector<int>>(),
                            j.at("n_classes").get<int>());
}

WindowConfig window_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("topology").get<std::string>() != "window")
    throw ShapeError("expected a window configuration");
  return WindowConfig::decode(j.at("lo").get<long>(),
                              j.at("sites").get<std::vector<int>>(),
                              j.at("n_classes").get<int>());
}

namespace {

template <typename Config>
std::string bare_array(const Config& u) {
  return json(u.encode()).dump();
}

template <typename Config>
std::string csv_row(const Config& u) {
  std::ostringstream os;
  std::vector<int> codes = u.encode();
  for (std::size_t i = 0; i < codes.size(); ++i) os << (i ? "," : "") << codes[i];
  return os.str();
}

}  // namespace

std::string encode_line(const RingConfig& u) { return bare_array(u); }
std::string encode_line(const WindowConfig& u) { return bare_array(u); }
std::string encode_csv_line(const RingConfig& u) { return csv_row(u); }
std::string encode_csv_line(const WindowConfig& u) { return csv_row(u); }

std::string weights_to_json(const exact::WeightedDistribution& dist,
                            const WeightTableOptions& options) {
  json states = json::array();
  for (const auto& [state, weight] : dist.weights)
    states.push_back(json{{"config", state}, {"weight", exact::to_decimal(weight)}});
  json out{{"N", dist.n_sites},
           {"n", dist.n_classes},
           {"counts", dist.counts.per_class()},
           {"M", exact::to_decimal(dist.denominator)},
           {"states", states}};
  if (options.balance_checked) out["balance"] = options.balance_ok;
  if (options.list_minimal) {
    json minimal = json::array();
    for (const RingConfig& u : exact::minimal_states(dist.n_sites, dist.counts))
      minimal.push_back(u.encode());
    out["minimal_states"] = minimal;
  }
  return out.dump(2);
}

void weights_to_csv(const exact::WeightedDistribution& dist, std::ostream& out) {
  for (int i = 0; i < dist.n_sites; ++i) out << "site" << i << ",";
  out << "weight\n";
  for (const auto& [state, weight] : dist.weights) {
    for (int code : state) out << code << ",";
    out << exact::to_decimal(weight) << "\n";
  }
}

void trace_to_stream(const sim::Trace& trace, std::ostream& out) {
  out << json{{"seed", trace.seed}}.dump() << "\n";
  std::size_t next_snapshot = 0;
  for (const sim::Event& ev : trace.events) {
    while (next_snapshot < trace.snapshots.size() &&
           trace.snapshots[next_snapshot].t < ev.t) {
      const sim::Snapshot& snap = trace.snapshots[next_snapshot++];
      out << json{{"t", snap.t}, {"state", snap.state}}.dump() << "\n";
    }
    out << json{{"t", ev.t}, {"site", ev.site}}.dump() << "\n";
  }
  while (next_snapshot < trace.snapshots.size()) {
    const sim::Snapshot& snap = trace.snapshots[next_snapshot++];
    out << json{{"t", snap.t}, {"state", snap.state}}.dump() << "\n";
  }
  out << json{{"final", trace.final_state}}.dump() << "\n";
}

}  // namespace mtasep::io
