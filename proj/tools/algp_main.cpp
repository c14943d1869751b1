#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "algp/experiment.hpp"
#include "algp/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Estimates the full output CDF/CCDF of an expensive model by active "
      "learning on a Gaussian-process surrogate"};

  std::string benchmark, mode = "gaussian", tail, reference, out = "algp_out";
  double ymin = 0.0, ymax = 0.0, eps_bar = 0.2, kbar = 2.0;
  std::int64_t pool_size = 1'000'000, regen = 0;
  int init_size = 12, runs = 10, budget = 500;
  std::uint64_t seed = 0;
  bool quiet = false;

  app.add_option("--benchmark", benchmark, "Model to study")
      ->required()
      ->check(CLI::IsMember({"toy", "ishigami", "bouc_wen"}));
  app.add_option("--mode", mode, "Learning mode")
      ->check(CLI::IsMember({"gaussian", "dirac", "mov", "conventional"}));
  auto* tail_opt = app.add_option(
      "--tail", tail, "Tail weighting: both, cdf or ccdf (default: preset)");
  if (tail_opt) {
    tail_opt->check(CLI::IsMember({"both", "cdf", "ccdf"}));
  }
  auto* ymin_opt =
      app.add_option("--ymin", ymin, "Lower end of the learning range");
  auto* ymax_opt =
      app.add_option("--ymax", ymax, "Upper end of the learning range");
  app.add_option("--eps-bar", eps_bar, "Stopping tolerance")
      ->capture_default_str();
  app.add_option("--kbar", kbar, "Fold band factor")->capture_default_str();
  app.add_option("--pool-size", pool_size, "Monte Carlo population size")
      ->capture_default_str();
  app.add_option("--init-size", init_size, "Initial design size")
      ->capture_default_str();
  app.add_option("--runs", runs, "Independent repetitions")
      ->capture_default_str();
  app.add_option("--seed", seed, "Master seed")->capture_default_str();
  app.add_option("--budget", budget, "Added-sample budget per run")
      ->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--reference", reference, "Reference CDF CSV path");
  app.add_option("--regen-reference", regen,
                 "Monte Carlo sample count for a fresh reference");
  app.add_flag("--quiet", quiet, "Suppress the summary table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  algp::ExperimentConfig cfg;
  try {
    const algp::Benchmark bench = algp::make_benchmark(benchmark);
    cfg.benchmark = benchmark;
    cfg.al.ymin = ymin_opt->count() ? ymin : bench.preset_ymin;
    cfg.al.ymax = ymax_opt->count() ? ymax : bench.preset_ymax;
    cfg.al.tail =
        tail.empty() ? bench.preset_tail : algp::tail_mode_from_string(tail);
    cfg.al.mode = algp::learn_mode_from_string(mode);
    cfg.al.eps_bar = eps_bar;
    cfg.al.kbar = kbar;
    cfg.al.pool_size = pool_size;
    cfg.al.init_size = init_size;
    cfg.al.seed = seed;
    cfg.al.budget = budget;
    cfg.runs = runs;
    cfg.out_dir = out;
    cfg.reference_path = reference;
    cfg.regen_reference = regen;
    cfg.quiet = quiet;
    cfg.al.validate();
    if (runs < 1) throw algp::ConfigError("--runs must be >= 1");
  } catch (const algp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    const algp::AggregateReport agg = algp::run_experiment(cfg);
    if (!quiet) {
      std::cout << algp::aggregate_to_table(agg);
      std::cout << "outputs in " << cfg.out_dir << "/ (aggregate.json, per-run "
                << "JSON and CDF CSVs)\n";
    }
    if (agg.failed_runs == cfg.runs) {
      std::cerr << "all runs failed; first error: " << agg.runs.front().error
                << "\n";
      return 2;
    }
    if (agg.failed_runs > 0) {
      std::cerr << agg.failed_runs << " of " << cfg.runs
                << " runs failed; aggregate covers the rest\n";
      return 3;
    }
    return 0;
  } catch (const algp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
