#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "algp/benchmarks.hpp"
#include "algp/gp.hpp"
#include "algp/kernels.hpp"
#include "algp/rng.hpp"
#include "algp/sampling.hpp"

using namespace algp;

namespace {

GpSurrogate toy_surrogate(int n_design) {
  Benchmark bench = make_benchmark("toy");
  Eigen::MatrixXd X = initial_design(bench.inputs, n_design, 42);
  Eigen::VectorXd y(n_design);
  for (int i = 0; i < n_design; ++i) y(i) = bench.model(X.row(i).transpose());
  FitOptions opts;
  opts.seed = 9;
  return GpSurrogate::fit(DesignSet(X, y), opts);
}

}  // namespace

TEST_CASE("parallel batch prediction is bitwise equal to the serial path") {
  GpSurrogate gp = toy_surrogate(24);
  // Sizes straddling the scheduling block length, plus a prime.
  for (std::int64_t n : {std::int64_t(1), std::int64_t(2047), std::int64_t(2048),
                         std::int64_t(2049), std::int64_t(4113),
                         std::int64_t(5039)}) {
    CandidatePool pool =
        sample_pool(RandomInputSpec::gaussians(2), n, 1000 + std::uint64_t(n));
    Eigen::VectorXd mean_p, sd_p, mean_s, sd_s;
    kernels::gp_predict_batch(gp, pool.points, mean_p, sd_p, true);
    kernels::gp_predict_batch_serial(gp, pool.points, mean_s, sd_s);
    REQUIRE(mean_p.size() == n);
    REQUIRE(sd_p.size() == n);
    CHECK(mean_p == mean_s);
    CHECK(sd_p == sd_s);
    Eigen::VectorXd mean_f, sd_f;
    kernels::gp_predict_batch(gp, pool.points, mean_f, sd_f, false);
    CHECK(mean_f == mean_s);
    CHECK(sd_f == sd_s);
  }
}

TEST_CASE("batch prediction agrees with the per-point predictor") {
  GpSurrogate gp = toy_surrogate(18);
  CandidatePool pool = sample_pool(RandomInputSpec::gaussians(2), 257, 77);
  Eigen::VectorXd mean, sd;
  kernels::gp_predict_batch(gp, pool.points, mean, sd, true);
  for (std::int64_t i = 0; i < pool.size(); ++i) {
    Prediction p = gp.predict_one(pool.points.row(i).transpose());
    CHECK(mean(i) == doctest::Approx(p.mean).epsilon(1e-12));
    CHECK(sd(i) == doctest::Approx(p.std).epsilon(1e-10));
  }
}

TEST_CASE("batch prediction handles a degenerate constant surrogate") {
  Eigen::MatrixXd X(3, 1);
  X << 0.0, 1.0, 2.0;
  Eigen::VectorXd y = Eigen::VectorXd::Constant(3, 4.25);
  GpSurrogate gp = GpSurrogate::fit(DesignSet(X, y));
  REQUIRE(gp.degenerate());
  Eigen::MatrixXd pts(5, 1);
  pts << -1.0, 0.5, 1.5, 2.0, 9.0;
  Eigen::VectorXd mean_p, sd_p, mean_s, sd_s;
  kernels::gp_predict_batch(gp, pts, mean_p, sd_p, true);
  kernels::gp_predict_batch_serial(gp, pts, mean_s, sd_s);
  CHECK(mean_p == mean_s);
  CHECK(sd_p == sd_s);
  for (int i = 0; i < 5; ++i) {
    CHECK(mean_p(i) == 4.25);
    CHECK(sd_p(i) == 0.0);
  }
}

TEST_CASE("parallel frame batch is bitwise equal to the serial path") {
  BoucWenFrame frame;
  for (std::int64_t n : {std::int64_t(1), std::int64_t(7), std::int64_t(33)}) {
    CandidatePool pool =
        sample_pool(RandomInputSpec::gaussians(4), n, 500 + std::uint64_t(n));
    Eigen::VectorXd out_p, out_s;
    kernels::boucwen_batch(frame, pool.points, 0.002, out_p, true);
    kernels::boucwen_batch_serial(frame, pool.points, 0.002, out_s);
    REQUIRE(out_p.size() == n);
    CHECK(out_p == out_s);
    kernels::boucwen_batch(frame, pool.points, 0.002, out_p, false);
    CHECK(out_p == out_s);
  }
}

TEST_CASE("frame batch agrees with the scalar simulation") {
  BoucWenFrame frame;
  CandidatePool pool = sample_pool(RandomInputSpec::gaussians(4), 9, 321);
  Eigen::VectorXd out;
  kernels::boucwen_batch(frame, pool.points, 0.002, out, true);
  for (std::int64_t i = 0; i < 9; ++i) {
    CHECK(out(i) == bouc_wen_drift(pool.points.row(i).transpose(), frame, 0.002));
  }
}
