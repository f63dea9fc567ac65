#include "gammarad/report.hpp"

#include <charconv>

namespace gammarad {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const ReportRow& r : rows) {
    out += csv_escape(r.experiment);
    out.push_back(',');
    out += csv_escape(r.params);
    out.push_back(',');
    out += format_double(r.value);
    out.push_back(',');
    out += format_double(r.std_error);
    out.push_back(',');
    out += csv_escape(r.truncation);
    out.push_back(',');
    out += std::to_string(r.seed);
    out.push_back('\n');
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace gammarad
