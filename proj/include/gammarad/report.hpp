#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gammarad {

// Shortest decimal representation that round-trips to the same double, with
// '.' as the decimal separator regardless of locale.  All numbers written to
// reports go through this function so identical runs emit identical bytes.
std::string format_double(double v);

// One line of an experiment report.  wall_time_ms is deliberately not part of
// the CSV (re-running a config with the same seed must reproduce the file
// bit-exactly); timing totals go to the run manifest instead.
struct ReportRow {
  std::string experiment;
  std::string params;  // "key=value;key=value" — no commas
  double value = 0.0;
  double std_error = 0.0;
  std::string truncation;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ms = 0;
};

inline constexpr std::string_view kCsvHeader = "experiment,params,value,std_error,truncation,seed";

// Fields containing commas, quotes, or newlines are double-quoted with
// embedded quotes doubled.
std::string csv_escape(std::string_view field);

// Header plus one newline-terminated line per row, fixed column order.
std::string to_csv(const std::vector<ReportRow>& rows);

// FNV-1a over the bytes of `s`; used for config hashing in run manifests.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace gammarad
