#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "adaptive_search/bench/trial.hpp"

namespace adsearch::bench {

class UnknownFormat : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ReportFormat : std::uint8_t { Table, Csv, Jsonl };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "table") return ReportFormat::Table;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "jsonl") return ReportFormat::Jsonl;
  throw UnknownFormat(fmt::format("unknown report format '{}' (expected table, csv or jsonl)", s));
}

inline constexpr std::string_view kCsvHeader =
    "algorithm,distribution,n,queries,found_rate,mean_probes,p99_probes,cache_hit_rate,wall_time_ns,seed";

namespace detail {

// Probes are printed with 2 decimals, rates with 4. Values read back from a
// report are already on that grid, so re-emitting them is lossless.
inline std::string fmt_probes(double v) { return fmt::format("{:.2f}", v); }
inline std::string fmt_rate(double v) { return fmt::format("{:.4f}", v); }

// Locale-independent.
template <class T>
T parse_number(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument(fmt::format("report: bad number '{}'", s));
  return v;
}

inline double to_double(std::string_view s) { return parse_number<double>(s); }

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::string csv_row(const TrialRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", to_string(r.algorithm), r.distribution, r.n,
                     r.queries, fmt_rate(r.found_rate), fmt_probes(r.mean_probes),
                     fmt_probes(r.p99_probes), fmt_rate(r.cache_hit_rate), r.wall_time_ns, r.seed);
}

inline nlohmann::ordered_json json_row(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = to_string(r.algorithm);
  j["distribution"] = r.distribution;
  j["n"] = r.n;
  j["queries"] = r.queries;
  j["found_rate"] = to_double(fmt_rate(r.found_rate));
  j["mean_probes"] = to_double(fmt_probes(r.mean_probes));
  j["p99_probes"] = to_double(fmt_probes(r.p99_probes));
  j["cache_hit_rate"] = to_double(fmt_rate(r.cache_hit_rate));
  j["wall_time_ns"] = r.wall_time_ns;
  j["seed"] = r.seed;
  return j;
}

inline std::string table(std::span<const TrialRecord> records) {
  std::size_t dist_w = std::string_view("distribution").size();
  for (const auto& r : records) dist_w = std::max(dist_w, r.distribution.size());
  std::string out = fmt::format("{:<14} {:<{}} {:>8} {:>7} {:>7} {:>11} {:>10} {:>9} {:>14} {:>14}\n",
                                "algorithm", "distribution", dist_w, "n", "queries", "found",
                                "mean_probes", "p99_probes", "hit_rate", "kernel_probes", "wall_time_ns");
  for (const auto& r : records) {
    out += fmt::format("{:<14} {:<{}} {:>8} {:>7} {:>7} {:>11} {:>10} {:>9} {:>14} {:>14}\n",
                       to_string(r.algorithm), r.distribution, dist_w, r.n, r.queries,
                       fmt_rate(r.found_rate), fmt_probes(r.mean_probes), fmt_probes(r.p99_probes),
                       fmt_rate(r.cache_hit_rate), r.kernel_probes, r.wall_time_ns);
  }
  return out;
}

}  // namespace detail

inline std::string emit_report(std::span<const TrialRecord> records, ReportFormat format) {
  std::string out;
  switch (format) {
    case ReportFormat::Table: return detail::table(records);
    case ReportFormat::Csv:
      out.append(kCsvHeader).push_back('\n');
      for (const auto& r : records) out.append(detail::csv_row(r)).push_back('\n');
      return out;
    case ReportFormat::Jsonl:
      for (const auto& r : records) out.append(detail::json_row(r).dump()).push_back('\n');
      return out;
  }
  throw UnknownFormat("unknown report format");
}

inline std::string emit_report(std::span<const TrialRecord> records, std::string_view format) {
  return emit_report(records, parse_report_format(format));
}

// Readers for the two machine formats. kernel_probes is not carried by
// either and reads back as 0.
inline std::vector<TrialRecord> read_csv(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("report: missing or unexpected csv header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 10) throw std::invalid_argument(fmt::format("report: expected 10 fields: '{}'", line));
    TrialRecord r;
    r.algorithm = parse_trial_algorithm(f[0]);
    r.distribution = std::string(f[1]);
    r.n = detail::parse_number<std::size_t>(f[2]);
    r.queries = detail::parse_number<std::size_t>(f[3]);
    r.found_rate = detail::to_double(f[4]);
    r.mean_probes = detail::to_double(f[5]);
    r.p99_probes = detail::to_double(f[6]);
    r.cache_hit_rate = detail::to_double(f[7]);
    r.wall_time_ns = detail::parse_number<std::uint64_t>(f[8]);
    r.seed = std::string(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<TrialRecord> read_jsonl(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    TrialRecord r;
    r.algorithm = parse_trial_algorithm(j.at("algorithm").get<std::string>());
    r.distribution = j.at("distribution").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.queries = j.at("queries").get<std::size_t>();
    r.found_rate = j.at("found_rate").get<double>();
    r.mean_probes = j.at("mean_probes").get<double>();
    r.p99_probes = j.at("p99_probes").get<double>();
    r.cache_hit_rate = j.at("cache_hit_rate").get<double>();
    r.wall_time_ns = j.at("wall_time_ns").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace adsearch::bench
