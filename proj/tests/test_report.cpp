#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adaptive_search/bench/report.hpp"

namespace adsearch::bench {
namespace {

TrialRecord sample(TrialAlgorithm a = TrialAlgorithm::Adaptive) {
  TrialRecord r;
  r.algorithm = a;
  r.distribution = "uniform;lo=0;hi=4294967296";
  r.n = 1024;
  r.queries = 10000;
  r.found_rate = 1.0;
  r.mean_probes = 2.8349;
  r.p99_probes = 7.0;
  r.cache_hit_rate = 0.018249;
  r.wall_time_ns = 123456;
  r.seed = "42:7";
  r.kernel_probes = 27000;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(EmitReport, EmptyCsvIsHeaderOnly) {
  EXPECT_EQ(emit_report({}, ReportFormat::Csv),
            "algorithm,distribution,n,queries,found_rate,mean_probes,p99_probes,cache_hit_rate,wall_time_ns,seed\n");
  EXPECT_EQ(emit_report({}, ReportFormat::Jsonl), "");
}

TEST(EmitReport, CsvNumericFormatting) {
  const std::vector<TrialRecord> recs{sample()};
  const auto out = lines(emit_report(recs, ReportFormat::Csv));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1], "adaptive,uniform;lo=0;hi=4294967296,1024,10000,1.0000,2.83,7.00,0.0182,123456,42:7");
}

TEST(EmitReport, OneJsonlRecordIsOneLine) {
  const std::vector<TrialRecord> recs{sample()};
  const auto text = emit_report(recs, ReportFormat::Jsonl);
  const auto out = lines(text);
  ASSERT_EQ(out.size(), 1u);
  const auto j = nlohmann::json::parse(out[0]);
  EXPECT_EQ(j.at("algorithm"), "adaptive");
  EXPECT_EQ(j.at("mean_probes").get<double>(), 2.83);
  EXPECT_EQ(j.at("cache_hit_rate").get<double>(), 0.0182);
  EXPECT_EQ(j.at("seed"), "42:7");
  EXPECT_EQ(j.size(), 10u);
}

TEST(EmitReport, TableHasHeaderAndOneRowPerRecord) {
  const std::vector<TrialRecord> recs{sample(TrialAlgorithm::Binary), sample(TrialAlgorithm::Linear)};
  const auto out = lines(emit_report(recs, ReportFormat::Table));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].find("algorithm"), 0u);
  EXPECT_EQ(out[1].find("binary"), 0u);
  EXPECT_EQ(out[1].size(), out[2].size());
}

TEST(EmitReport, UnknownFormat) {
  EXPECT_THROW(emit_report({}, std::string_view{"xml"}), UnknownFormat);
  EXPECT_EQ(parse_report_format("jsonl"), ReportFormat::Jsonl);
}

TEST(ReportProperty, CsvJsonlCsvRoundTripIsExact) {
  std::vector<TrialRecord> recs;
  for (int i = 0; i < 50; ++i) {
    TrialRecord r = sample(static_cast<TrialAlgorithm>(i % 4));
    r.n = static_cast<std::size_t>(i) * 977;
    r.mean_probes = 1.0 / (i + 1) * 1234.5678;
    r.p99_probes = i * 3;
    r.found_rate = (i % 7) / 7.0;
    r.cache_hit_rate = (i % 11) / 11.0;
    r.wall_time_ns = static_cast<std::uint64_t>(i) * 1'000'003;
    r.seed = std::to_string(i) + ":" + std::to_string(i * 31);
    recs.push_back(r);
  }
  const std::string csv = emit_report(recs, ReportFormat::Csv);
  std::istringstream csv_in(csv);
  const auto from_csv = read_csv(csv_in);
  ASSERT_EQ(from_csv.size(), recs.size());
  const std::string jsonl = emit_report(from_csv, ReportFormat::Jsonl);
  std::istringstream jsonl_in(jsonl);
  const auto from_jsonl = read_jsonl(jsonl_in);
  EXPECT_EQ(emit_report(from_jsonl, ReportFormat::Csv), csv);
  EXPECT_EQ(emit_report(from_jsonl, ReportFormat::Jsonl), jsonl);
}

TEST(ReadCsv, RejectsBadInput) {
  std::istringstream no_header("binary,x,1,1,1,1,1,0,1,1:1\n");
  EXPECT_THROW(read_csv(no_header), std::invalid_argument);
  std::istringstream short_row(std::string(kCsvHeader) + "\nbinary,x,1\n");
  EXPECT_THROW(read_csv(short_row), std::invalid_argument);
}

}  // namespace
}  // namespace adsearch::bench
