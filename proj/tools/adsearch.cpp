// adsearch: dataset generation, single queries and the benchmark suite.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
// violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "adaptive_search/adaptive_search.hpp"
#include "adaptive_search/bench/generate.hpp"
#include "adaptive_search/bench/report.hpp"
#include "adaptive_search/bench/trial.hpp"

namespace {

using namespace adsearch;
using namespace adsearch::bench;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelectorFlags {
  double tau = SelectorConfig{}.tau;
  std::size_t min_interp_len = SelectorConfig{}.min_interp_len;
  std::size_t gap_samples = SelectorConfig{}.max_gap_samples;
  std::size_t cache_size = EngineConfig{}.cache_capacity;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--tau", tau, "Gap-CV threshold for choosing interpolation")->capture_default_str();
    cmd.add_option("--min-interp-len", min_interp_len, "Smallest dataset searched by interpolation")
        ->capture_default_str();
    cmd.add_option("--gap-samples", gap_samples, "Maximum gaps examined by the selector")->capture_default_str();
    cmd.add_option("--cache-size", cache_size, "LRU result cache capacity")->capture_default_str();
  }

  EngineConfig engine() const {
    EngineConfig cfg;
    cfg.selector = {tau, min_interp_len, gap_samples};
    cfg.cache_capacity = cache_size;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataFileError(fmt::format("cannot open '{}' for writing", path));
  out << text;
}

SortedDataset read_dataset_file(const std::string& path) {
  if (path == "-") return load_dataset(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataFileError(fmt::format("cannot open '{}'", path));
  return load_dataset(in);
}

template <class T>
std::vector<T> parse_list(const std::vector<std::string>& raw, T (*parse)(std::string_view)) {
  std::vector<T> out;
  for (const auto& item : raw) {
    try {
      out.push_back(parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct GenOptions {
  std::string dist = "uniform";
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  DistributionParams params;
  std::string out;
};

int run_gen(const GenOptions& o) {
  DistributionSpec spec;
  try {
    spec = {parse_distribution_kind(o.dist), o.n, o.seed, o.params};
    spec.validate();
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  write_dataset(text, generate(spec));
  write_output(o.out, text.str());
  return kOk;
}

struct SearchOptions {
  std::string data;
  Key target = 0;
  std::string algorithm = "auto";
  SelectorFlags selector;
};

int run_search(const SearchOptions& o) {
  EngineConfig cfg = o.selector.engine();
  if (o.algorithm != "auto") {
    const auto a = parse_trial_algorithm(o.algorithm);
    if (a == TrialAlgorithm::Adaptive) throw UsageError("use 'auto' for adaptive selection");
    cfg.override_algorithm = kernel_of(a);
  }
  Engine engine(cfg);
  const RegisteredDataset reg = engine.register_dataset(read_dataset_file(o.data));
  const QueryResult r = engine.adaptive_search(reg, o.target);

  fmt::print("dataset: {} (n={})\n", reg.dataset.id().to_string(), reg.dataset.size());
  fmt::print("uniformity_score: {:.6f}{}\n", reg.stats.uniformity_score, reg.stats.sampled ? " (sampled)" : "");
  fmt::print("choice: {} ({})\n", to_string(reg.choice.algorithm), to_string(reg.choice.reason));
  fmt::print("target: {}\n", o.target);
  fmt::print("found: {}\n", r.outcome.found());
  if (r.outcome.index) fmt::print("index: {}\n", *r.outcome.index);
  fmt::print("algorithm: {}\n", to_string(r.algorithm_used));
  fmt::print("cache_hit: {}\n", r.cache_hit);
  fmt::print("probes: {}\n", r.outcome.trace.probes);
  fmt::print("visited: [{}]\n", fmt::join(r.outcome.trace.visited, ", "));
  return kOk;
}

struct BenchOptions {
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::string out;
  std::vector<std::string> dists;
  std::vector<std::size_t> sizes;
  std::vector<std::string> algorithms;
  std::size_t queries = 10'000;
  std::string mode = "members";
  double repeat = 0.0;
  SelectorFlags selector;
};

int run_bench(const BenchOptions& o) {
  ReportFormat format;
  try {
    format = parse_report_format(o.format);
  } catch (const UnknownFormat& e) {
    throw UsageError(e.what());
  }
  const std::uint64_t seed = o.seed ? *o.seed : std::random_device{}() * 0x100000001ULL ^ std::random_device{}();
  if (!o.seed) fmt::print(stderr, "seed: {}\n", seed);

  SuiteConfig cfg = SuiteConfig::defaults(seed);
  cfg.engine = o.selector.engine();
  if (!o.dists.empty()) {
    cfg.distributions.clear();
    for (auto kind : parse_list<DistributionKind>(o.dists, parse_distribution_kind))
      cfg.distributions.push_back({kind, {}});
  }
  if (!o.sizes.empty()) cfg.sizes = o.sizes;
  if (!o.algorithms.empty()) cfg.algorithms = parse_list<TrialAlgorithm>(o.algorithms, parse_trial_algorithm);
  cfg.queries.count = o.queries;
  cfg.queries.repeat_fraction = o.repeat;
  try {
    cfg.queries.mode = parse_target_mode(o.mode);
    cfg.queries.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<TrialRecord> records;
  try {
    records = run_suite(cfg);
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }
  std::string text = emit_report(records, format);
  if (format == ReportFormat::Table) text = fmt::format("seed: {}\n", seed) + text;
  write_output(o.out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive sorted-key search: dataset generation, queries and benchmarks"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated dataset (one integer per line)");
  gen_cmd->add_option("--dist", gen.dist, "uniform | clustered | exponential | zipf")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of keys")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--lo", gen.params.lo, "Lower key bound (uniform, clustered)")->capture_default_str();
  gen_cmd->add_option("--hi", gen.params.hi, "Upper key bound (uniform, clustered)")->capture_default_str();
  gen_cmd->add_option("--clusters", gen.params.clusters, "Cluster count (clustered)")->capture_default_str();
  gen_cmd->add_option("--spread", gen.params.spread, "Cluster std deviation (clustered)")->capture_default_str();
  gen_cmd->add_option("--scale", gen.params.scale, "Key scale (exponential)")->capture_default_str();
  gen_cmd->add_option("--zipf-s", gen.params.zipf_s, "Exponent (zipf)")->capture_default_str();
  gen_cmd->add_option("--universe", gen.params.universe, "Key universe size (zipf)")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Run one query against a dataset file");
  search_cmd->add_option("--data", search.data, "Dataset file ('-' for stdin)")->required();
  search_cmd->add_option("--target", search.target, "Key to look up")->required();
  search_cmd->add_option("--algorithm", search.algorithm, "auto | binary | interpolation | linear")
      ->capture_default_str();
  search.selector.add_to(*search_cmd);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark suite and emit a report");
  bench_cmd->add_option("--seed", bench.seed, "Master seed (default: from entropy, printed to stderr)");
  bench_cmd->add_option("--format", bench.format, "table | csv | jsonl")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Report file (default stdout)");
  bench_cmd->add_option("--dists", bench.dists, "Distributions (default: uniform exponential)");
  bench_cmd->add_option("--sizes", bench.sizes, "Dataset sizes (default: 1024 16384 262144 1048576)");
  bench_cmd->add_option("--algorithms", bench.algorithms, "Subset of binary interpolation linear adaptive");
  bench_cmd->add_option("--queries", bench.queries, "Queries per cell")->capture_default_str();
  bench_cmd->add_option("--mode", bench.mode, "members | mixed")->capture_default_str();
  bench_cmd->add_option("--repeat", bench.repeat, "Probability a query replays an earlier one")
      ->capture_default_str();
  bench.selector.add_to(*bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*search_cmd) return run_search(search);
    if (*bench_cmd) return run_bench(bench);
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  } catch (const InvariantViolation& e) {
    fmt::print(stderr, "invariant violation: {}\n", e.what());
    return kInternal;
  } catch (const DataError& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return kData;
  } catch (const DataFileError& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return kData;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kInternal;
  }
  return kUsage;
}
