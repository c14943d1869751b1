#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "algp/benchmarks.hpp"
#include "algp/gp.hpp"
#include "algp/kernels.hpp"
#include "algp/rng.hpp"
#include "algp/sampling.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double checksum(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Times the OpenMP batch kernels against their serial references"};
  std::int64_t n_points = 200000;
  int dim = 6, n_train = 80, n_sims = 48, reps = 3, threads = 0;
  app.add_option("--n", n_points, "Prediction batch size")->capture_default_str();
  app.add_option("--dim", dim, "Input dimension for the GP kernel")->capture_default_str();
  app.add_option("--train", n_train, "Training set size")->capture_default_str();
  app.add_option("--sims", n_sims, "Hysteretic-frame batch size")->capture_default_str();
  app.add_option("--reps", reps, "Timed repetitions (best is reported)")->capture_default_str();
  app.add_option("--threads", threads, "Thread count override (0 = default)");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("openmp: enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled at build time\n");
#endif

  using algp::Rng;

  // GP batch prediction on a synthetic smooth response.
  {
    const auto spec = algp::RandomInputSpec::gaussians(dim);
    const auto train = algp::sample_pool(spec, n_train, 11);
    Eigen::VectorXd y(n_train);
    for (int i = 0; i < n_train; ++i) {
      y(i) = std::sin(train.points.row(i).sum()) +
             0.3 * train.points.row(i).squaredNorm();
    }
    algp::FitOptions fo;
    fo.optimize = false;
    fo.fixed_log_ls = Eigen::VectorXd::Zero(dim);
    const auto gp =
        algp::GpSurrogate::fit(algp::DesignSet(train.points, y), fo);
    const auto pool = algp::sample_pool(spec, n_points, 12);

    Eigen::VectorXd m_par, s_par, m_ser, s_ser;
    algp::kernels::gp_predict_batch(gp, pool.points, m_par, s_par, true);
    algp::kernels::gp_predict_batch_serial(gp, pool.points, m_ser, s_ser);

    double t_par = 1e300, t_ser = 1e300;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      algp::kernels::gp_predict_batch(gp, pool.points, m_par, s_par, true);
      t_par = std::min(t_par, seconds_since(t0));
      t0 = std::chrono::steady_clock::now();
      algp::kernels::gp_predict_batch_serial(gp, pool.points, m_ser, s_ser);
      t_ser = std::min(t_ser, seconds_since(t0));
    }
    std::printf("gp_predict_batch   n=%lld d=%d train=%d\n",
                static_cast<long long>(n_points), dim, n_train);
    std::printf("  parallel %.4f s   serial %.4f s   speedup %.2fx\n", t_par,
                t_ser, t_ser / t_par);
    std::printf("  max |mean diff| %.3g   max |sd diff| %.3g\n",
                checksum(m_par, m_ser), checksum(s_par, s_ser));
  }

  // Hysteretic-frame simulation batch.
  {
    const algp::BoucWenFrame frame;
    const auto spec = algp::RandomInputSpec::gaussians(4);
    const auto amps = algp::sample_pool(spec, n_sims, 13);

    Eigen::VectorXd d_par, d_ser;
    algp::kernels::boucwen_batch(frame, amps.points, 0.002, d_par, true);
    algp::kernels::boucwen_batch_serial(frame, amps.points, 0.002, d_ser);

    double t_par = 1e300, t_ser = 1e300;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      algp::kernels::boucwen_batch(frame, amps.points, 0.002, d_par, true);
      t_par = std::min(t_par, seconds_since(t0));
      t0 = std::chrono::steady_clock::now();
      algp::kernels::boucwen_batch_serial(frame, amps.points, 0.002, d_ser);
      t_ser = std::min(t_ser, seconds_since(t0));
    }
    std::printf("boucwen_batch      sims=%d duration=%.1fs dt=0.002\n", n_sims,
                frame.duration);
    std::printf("  parallel %.4f s   serial %.4f s   speedup %.2fx\n", t_par,
                t_ser, t_ser / t_par);
    std::printf("  max |drift diff| %.3g\n", checksum(d_par, d_ser));
  }
  return 0;
}
