#pragma once

// Serialization: JSON for configurations, weight tables, reports, and trace
// records; CSV for weight tables. Sites encode as 0 for a hole and the
// class number otherwise.

#include <iosfwd>
#include <string>

#include "mtasep/config.hpp"
#include "mtasep/exact.hpp"
#include "mtasep/multiline.hpp"
#include "mtasep/simulate.hpp"
#include "mtasep/stats.hpp"

namespace mtasep::io {

std::string to_json(const RingConfig& u);
std::string to_json(const WindowConfig& u);
std::string to_json(const multiline::MultiLineRing& x);
std::string to_json(const stats::TestReport& report);

RingConfig ring_from_json(const std::string& text);
WindowConfig window_from_json(const std::string& text);

// Bare site array, one configuration per line in sample streams.
std::string encode_line(const RingConfig& u);
std::string encode_line(const WindowConfig& u);
std::string encode_csv_line(const RingConfig& u);
std::string encode_csv_line(const WindowConfig& u);

struct WeightTableOptions {
  bool balance_checked = false;
  bool balance_ok = false;
  bool list_minimal = false;
};

std::string weights_to_json(const exact::WeightedDistribution& dist,
                            const WeightTableOptions& options = {});
void weights_to_csv(const exact::WeightedDistribution& dist, std::ostream& out);

// Trace records, one JSON object per line.
void trace_to_stream(const sim::Trace& trace, std::ostream& out);

}  // namespace mtasep::io
