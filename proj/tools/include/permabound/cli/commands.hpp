#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permabound/bounds.hpp"
#include "permabound/randmodels.hpp"
#include "permabound/serialize.hpp"

namespace permabound::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Format { kJson, kCsv };

struct RunConfig {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int max_iter = 20000;
  int threads = 1;
  std::string output_path;  // empty means stdout
  Format format = Format::kJson;
};

// PERMABOUND_THREADS when set to a positive integer, else the core count.
int default_threads();

// Row-oriented part of a report. It becomes the CSV output and an array of
// objects under `name` in the JSON output.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct CommandResult {
  Json report;  // summary fields, in output order
  Table table;
  long violations = 0;  // of proven inequalities and identities only
};

// Thread count, output path and format never appear in the output, so a
// report is identical for every --threads value.
Json config_json(const RunConfig& cfg);
std::string render(const CommandResult& result, Format format);

struct BoundsOptions {
  std::string matrix_file;
  bool sinkhorn = false;
  bool skip_cw = false;
  HolderVariant holder = HolderVariant::kSumSquared;
};

struct VerifyOptions {
  int count = 500;
  int n_min = 3;
  int n_max = 9;
  std::string inequality = "all";
};

struct CounterexampleOptions {
  int n_min = 2;
  int n_max = 120;
  int materialize_max = 12;  // largest n whose K_n is built and checked against the closed forms
};

struct AlmcOptions {
  int r = 2;
  int n = 4;
  std::optional<int> m;  // all m in 1..n when unset
  std::string mode = "enumerate";
  std::int64_t samples = 1000;
  Model model = Model::kBM;
  std::size_t cap = 1'000'000;
  double t = 0.5;
  std::vector<int> convergence_n{4, 8, 12, 16, 24};
};

struct RatioScanOptions {
  std::string family = "example2";
  int n_min = 2;
  int n_max = 12;
  int r = 3;  // regular family only
};

struct ProbeOptions {
  std::string conjecture = "strong";
  std::string corpus = "random";
  int count = 100;
  int n_min = 3;
  int n_max = 8;
  int r = 3;
  double c = 0.5;  // exponent of F in the mild conjecture
  int bins = 10;
};

struct SampleOptions {
  Model model = Model::kBM;
  int r = 2;
  int n = 10;
  std::int64_t samples = 10000;
  std::string estimator = "perm";
  int m = 1;  // emd only
  std::string per_sample_path;
};

CommandResult cmd_bounds(const BoundsOptions& opts, const RunConfig& cfg);
CommandResult cmd_verify(const VerifyOptions& opts, const RunConfig& cfg);
CommandResult cmd_counterexample(const CounterexampleOptions& opts, const RunConfig& cfg);
CommandResult cmd_almc(const AlmcOptions& opts, const RunConfig& cfg);
CommandResult cmd_ratio_scan(const RatioScanOptions& opts, const RunConfig& cfg);
CommandResult cmd_probe(const ProbeOptions& opts, const RunConfig& cfg);
CommandResult cmd_sample(const SampleOptions& opts, const RunConfig& cfg);

}  // namespace permabound::cli
