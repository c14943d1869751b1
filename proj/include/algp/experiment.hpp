#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "algp/benchmarks.hpp"
#include "algp/distribution.hpp"
#include "algp/learning.hpp"

namespace algp {

struct ExperimentConfig {
  std::string benchmark;
  AlConfig al;               // al.seed is the master seed; run seeds derive from it
  int runs = 10;
  std::string out_dir = "algp_out";
  std::string reference_path;        // explicit reference CSV; empty -> cache
  std::int64_t regen_reference = 0;  // >0 overrides the benchmark's default count
  bool quiet = false;
};

struct RunSummary {
  int run_index = 0;
  bool failed = false;
  std::string error;
  double eps_e = 0.0;
  std::int64_t n_model_calls = 0;
  MomentSet moments;
  Termination termination = Termination::Converged;
  std::string report_file, cdf_file;
};

struct AggregateReport {
  ExperimentConfig config;
  std::vector<RunSummary> runs;
  double eps_mean = 0.0;
  double eps_std = 0.0;
  double n_calls_mean = 0.0;
  MomentSet moment_means;
  MomentSet moment_abs_cov;  // |std/mean| across runs, per moment
  int failed_runs = 0;
  std::string reference_file;
};

std::string reference_cache_path(const std::string& out_dir,
                                 const std::string& benchmark,
                                 std::int64_t samples, std::uint64_t seed);

// Writes the reference CDF CSV: exact closed form for the toy benchmark,
// direct Monte Carlo on the true model otherwise. Returns the path written.
std::string generate_reference(const Benchmark& bench, std::int64_t samples,
                               std::uint64_t seed, const std::string& path);

AggregateReport run_experiment(const ExperimentConfig& config);

nlohmann::ordered_json aggregate_to_json(const AggregateReport& agg);
std::string aggregate_to_table(const AggregateReport& agg);

}  // namespace algp
