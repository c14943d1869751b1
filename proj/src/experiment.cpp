#include "algp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "algp/io.hpp"
#include "algp/rng.hpp"

namespace algp {

namespace {

std::string run_tag(int r) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "run_%03d", r);
  return buf;
}

std::string file_name(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

}  // namespace

std::string reference_cache_path(const std::string& out_dir,
                                 const std::string& benchmark,
                                 std::int64_t samples, std::uint64_t seed) {
  std::ostringstream s;
  s << out_dir << "/reference_" << benchmark << '_';
  if (benchmark == "toy") {
    s << "exact";
  } else {
    s << samples << '_' << seed;
  }
  s << ".csv";
  return s.str();
}

std::string generate_reference(const Benchmark& bench, std::int64_t samples,
                               std::uint64_t seed, const std::string& path) {
  if (bench.model.name() == "toy") {
    const int nodes = 100001;
    const double lo = bench.preset_ymin - 3.0;
    const double hi = bench.preset_ymax + 3.0;
    std::vector<double> ys(nodes), fs(nodes);
    for (int i = 0; i < nodes; ++i) {
      ys[i] = lo + (hi - lo) * double(i) / double(nodes - 1);
      fs[i] = toy_exact_cdf(ys[i]);
    }
    write_reference_csv(path, ys, fs);
    return path;
  }
  if (samples < 2) {
    throw ConfigError("generate_reference: need at least 2 Monte Carlo samples");
  }
  const CandidatePool pool =
      sample_pool(bench.inputs, samples, derive_seed(seed, Stream::Reference, 0));
  std::vector<double> outs(samples);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < samples; ++i) {
    outs[i] = bench.model(pool.points.row(i).transpose());
  }
  const ReferenceCdf ref = ReferenceCdf::from_samples(std::move(outs));
  write_reference_csv(path, ref.ys(), ref.fs());
  return path;
}

AggregateReport run_experiment(const ExperimentConfig& config) {
  const Benchmark bench = make_benchmark(config.benchmark);
  config.al.validate();
  if (config.runs < 1) throw ConfigError("run_experiment: runs must be >= 1");

  std::filesystem::create_directories(config.out_dir);

  std::string ref_file = config.reference_path;
  if (ref_file.empty()) {
    const std::int64_t samples = config.regen_reference > 0
                                     ? config.regen_reference
                                     : bench.default_reference_samples;
    ref_file = reference_cache_path(config.out_dir, config.benchmark, samples,
                                    config.al.seed);
    if (!std::filesystem::exists(ref_file)) {
      generate_reference(bench, samples, config.al.seed, ref_file);
    }
  }
  const ReferenceCdf reference = load_reference_csv(ref_file);

  AggregateReport agg;
  agg.config = config;
  agg.reference_file = ref_file;

  for (int r = 0; r < config.runs; ++r) {
    RunSummary s;
    s.run_index = r;
    AlConfig rc = config.al;
    rc.seed = derive_seed(config.al.seed, Stream::Run, r);
    try {
      const RunReport rep = run_active_loop(bench.model, bench.inputs, rc);
      s.report_file = run_tag(r) + ".json";
      s.cdf_file = run_tag(r) + "_cdf.csv";
      write_text_file(config.out_dir + "/" + s.report_file,
                      report_to_json(rep).dump(2) + "\n");
      write_cdf_csv(config.out_dir + "/" + s.cdf_file, rep.final_cdf, rc.ymin,
                    rc.ymax);
      const auto estimated = [&rep](double y) { return rep.final_cdf.f_mid(y); };
      s.eps_e = epsilon_e(estimated, reference, rc.ymin, rc.ymax, rc.tail);
      s.n_model_calls = rep.n_model_calls;
      s.moments = rep.final_moments;
      s.termination = rep.termination;
    } catch (const std::exception& e) {
      s.failed = true;
      s.error = e.what();
      ++agg.failed_runs;
    }
    agg.runs.push_back(std::move(s));
  }

  int ok = 0;
  double eps_sum = 0.0, eps_sq = 0.0, calls_sum = 0.0;
  double m_sum[4] = {0, 0, 0, 0}, m_sq[4] = {0, 0, 0, 0};
  for (const RunSummary& s : agg.runs) {
    if (s.failed) continue;
    ++ok;
    eps_sum += s.eps_e;
    eps_sq += s.eps_e * s.eps_e;
    calls_sum += double(s.n_model_calls);
    const double m[4] = {s.moments.mean, s.moments.std, s.moments.skewness,
                         s.moments.kurtosis};
    for (int k = 0; k < 4; ++k) {
      m_sum[k] += m[k];
      m_sq[k] += m[k] * m[k];
    }
  }
  if (ok > 0) {
    agg.eps_mean = eps_sum / ok;
    agg.eps_std = std::sqrt(std::max(0.0, eps_sq / ok - agg.eps_mean * agg.eps_mean));
    agg.n_calls_mean = calls_sum / ok;
    double means[4], covs[4];
    for (int k = 0; k < 4; ++k) {
      means[k] = m_sum[k] / ok;
      const double sd =
          std::sqrt(std::max(0.0, m_sq[k] / ok - means[k] * means[k]));
      covs[k] = means[k] != 0.0 ? std::fabs(sd / means[k]) : 0.0;
    }
    agg.moment_means = {means[0], means[1], means[2], means[3], false};
    agg.moment_abs_cov = {covs[0], covs[1], covs[2], covs[3], false};
  }

  write_text_file(config.out_dir + "/aggregate.json",
                  aggregate_to_json(agg).dump(2) + "\n");
  write_text_file(config.out_dir + "/aggregate.txt", aggregate_to_table(agg));
  return agg;
}

nlohmann::ordered_json aggregate_to_json(const AggregateReport& agg) {
  nlohmann::ordered_json j;
  j["schema"] = "al-gp-aggregate/1";
  j["benchmark"] = agg.config.benchmark;
  j["runs"] = agg.config.runs;
  j["failed_runs"] = agg.failed_runs;
  j["reference_file"] = file_name(agg.reference_file);
  {
    const AlConfig& c = agg.config.al;
    j["config"] = nlohmann::ordered_json{
        {"ymin", c.ymin},       {"ymax", c.ymax},
        {"eps_bar", c.eps_bar}, {"kbar", c.kbar},
        {"pool_size", c.pool_size}, {"init_size", c.init_size},
        {"mode", to_string(c.mode)}, {"tail", to_string(c.tail)},
        {"seed", c.seed},       {"budget", c.budget},
        {"threshold_count", c.threshold_count}};
  }
  j["eps_mean"] = agg.eps_mean;
  j["eps_std"] = agg.eps_std;
  j["n_calls_mean"] = agg.n_calls_mean;
  j["moment_means"] = moments_to_json(agg.moment_means);
  j["moment_abs_cov"] = moments_to_json(agg.moment_abs_cov);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const RunSummary& s : agg.runs) {
    nlohmann::ordered_json jr;
    jr["run"] = s.run_index;
    jr["failed"] = s.failed;
    if (s.failed) {
      jr["error"] = s.error;
    } else {
      jr["eps_e"] = s.eps_e;
      jr["n_model_calls"] = s.n_model_calls;
      jr["termination"] = to_string(s.termination);
      jr["moments"] = moments_to_json(s.moments);
      jr["report_file"] = s.report_file;
      jr["cdf_file"] = s.cdf_file;
    }
    runs.push_back(std::move(jr));
  }
  j["runs_detail"] = std::move(runs);
  return j;
}

std::string aggregate_to_table(const AggregateReport& agg) {
  char buf[160];
  std::ostringstream out;
  out << "benchmark        " << agg.config.benchmark << '\n';
  out << "mode             " << to_string(agg.config.al.mode) << '\n';
  out << "tail             " << to_string(agg.config.al.tail) << '\n';
  std::snprintf(buf, sizeof(buf), "range            [%g, %g]\n",
                agg.config.al.ymin, agg.config.al.ymax);
  out << buf;
  std::snprintf(buf, sizeof(buf), "runs             %d  (failed %d)\n",
                agg.config.runs, agg.failed_runs);
  out << buf;
  std::snprintf(buf, sizeof(buf), "E[eps_e]         %.6g  (sigma %.6g)\n",
                agg.eps_mean, agg.eps_std);
  out << buf;
  std::snprintf(buf, sizeof(buf), "E[N_M]           %.6g\n", agg.n_calls_mean);
  out << buf;
  const char* names[4] = {"mean", "std", "skewness", "kurtosis"};
  const double means[4] = {agg.moment_means.mean, agg.moment_means.std,
                           agg.moment_means.skewness, agg.moment_means.kurtosis};
  const double covs[4] = {agg.moment_abs_cov.mean, agg.moment_abs_cov.std,
                          agg.moment_abs_cov.skewness,
                          agg.moment_abs_cov.kurtosis};
  for (int k = 0; k < 4; ++k) {
    std::snprintf(buf, sizeof(buf), "%-16s %.6g  (|cov| %.6g)\n", names[k],
                  means[k], covs[k]);
    out << buf;
  }
  out << "reference        " << file_name(agg.reference_file) << '\n';
  return out.str();
}

}  // namespace algp
