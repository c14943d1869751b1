#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "algp/benchmarks.hpp"
#include "algp/distribution.hpp"
#include "algp/errors.hpp"
#include "algp/sampling.hpp"

using namespace algp;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
  Eigen::VectorXd v(4);
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_CASE("toy model is the smaller of difference and sum") {
  CHECK(toy_model(vec2(0.0, 0.0)) == 0.0);
  CHECK(toy_model(vec2(1.0, 2.0)) == -1.0);
  CHECK(toy_model(vec2(3.0, -4.0)) == -1.0);
  CHECK(toy_model(vec2(2.0, 1.0)) == 1.0);
  CHECK_THROWS_AS(toy_model(vec3(0.0, 0.0, 0.0)), DimensionMismatch);
}

TEST_CASE("toy closed-form cdf reproduces independently computed values") {
  // Output is the minimum of two independent N(0, sqrt(2)) variables, so
  // F(y) = p(2 - p) with p the N(0, sqrt(2)) CDF. Reference values computed
  // with 30-digit arithmetic.
  CHECK(toy_exact_cdf(0.0) == 0.75);
  CHECK(toy_exact_cdf(-5.0) ==
        doctest::Approx(0.00040691061495883331).epsilon(1e-12));
  CHECK(1.0 - toy_exact_cdf(3.0) ==
        doctest::Approx(0.00028721527386503521).epsilon(1e-12));

  double prev = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double y = -10.0 + 20.0 * i / 400.0;
    const double f = toy_exact_cdf(y);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f >= prev - 1e-15);  // monotone up to roundoff in p*(2-p)
    prev = f;
  }
  CHECK(toy_exact_cdf(-40.0) == doctest::Approx(0.0));
  CHECK(toy_exact_cdf(40.0) == doctest::Approx(1.0));
}

TEST_CASE("toy closed-form cdf agrees with a large monte carlo sample") {
  const std::int64_t n = 10'000'000;
  CandidatePool pool = sample_pool(RandomInputSpec::gaussians(2), n, 2024);
  std::vector<double> ys(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    ys[static_cast<std::size_t>(i)] =
        std::min(pool.points(i, 0) - pool.points(i, 1),
                 pool.points(i, 0) + pool.points(i, 1));
  }
  std::sort(ys.begin(), ys.end());
  double ks = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double f = toy_exact_cdf(ys[static_cast<std::size_t>(i)]);
    ks = std::max(ks, std::fabs(f - double(i + 1) / double(n)));
    ks = std::max(ks, std::fabs(f - double(i) / double(n)));
  }
  CHECK(ks <= 5e-4);
}

TEST_CASE("ishigami closed-form spot values and sample moments") {
  CHECK(ishigami(vec3(0.0, 0.0, 0.0)) == 0.0);
  CHECK(ishigami(vec3(M_PI / 2, M_PI / 2, 0.0)) == doctest::Approx(8.0));
  // sin(pi/2) * (1 + 0.1 * pi^4)
  CHECK(ishigami(vec3(M_PI / 2, 0.0, M_PI)) ==
        doctest::Approx(10.740909103400244).epsilon(1e-12));
  CHECK_THROWS_AS(ishigami(vec2(0.0, 0.0)), DimensionMismatch);

  // Analytic moments: mean a/2; variance a^2/8 + b pi^4/5 + b^2 pi^8/18 + 1/2.
  // Both additive parts are symmetric, so the skewness is zero.
  const std::int64_t n = 1'000'000;
  CandidatePool pool =
      sample_pool(RandomInputSpec::uniforms(3, -M_PI, M_PI), n, 7);
  std::vector<double> ys(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    ys[static_cast<std::size_t>(i)] = ishigami(pool.points.row(i).transpose());
  }
  MomentSet m = sample_moments(ys);
  CHECK(std::fabs(m.mean - 3.5) <= 0.02);
  CHECK(std::fabs(m.std - 3.7208316195064856) <= 0.02);
  CHECK(std::fabs(m.skewness) <= 0.02);
}

TEST_CASE("model function forwards values, counts calls, checks dimension") {
  ModelFunction f("probe", 2, [](const Eigen::VectorXd& x) {
    return x(0) + 10.0 * x(1);
  });
  CHECK(f.name() == "probe");
  CHECK(f.dimension() == 2);
  CHECK(f.calls() == 0);
  CHECK(f(vec2(1.0, 2.0)) == 21.0);
  ModelFunction copy = f;
  CHECK(copy(vec2(0.0, 1.0)) == 10.0);
  CHECK(f.calls() == 2);  // the counter is shared across copies
  CHECK_THROWS_AS(f(vec3(0.0, 0.0, 0.0)), DimensionMismatch);
  CHECK(f.calls() == 2);  // rejected calls are not counted
  f.reset_calls();
  CHECK(copy.calls() == 0);
}

TEST_CASE("frame at rest with zero forcing amplitudes stays at rest") {
  BoucWenFrame frame;
  CHECK(bouc_wen_drift(Eigen::VectorXd::Zero(4), frame) == 0.0);
}

TEST_CASE("frame modal data matches hand-derived constants") {
  BoucWenFrame frame;
  // Characteristic values of K/m: 51.97883657128..., 300 (exact),
  // 808.02116342871... for the 3.0/2.8/1.5e8 N/m stories on 1e6 kg floors.
  Eigen::Vector3d w = linear_modal_frequencies(frame);
  CHECK(w(0) == doctest::Approx(7.2096349818339635).epsilon(1e-12));
  CHECK(w(1) == doctest::Approx(17.320508075688773).epsilon(1e-12));
  CHECK(w(2) == doctest::Approx(28.425713068078274).epsilon(1e-12));

  Eigen::Vector3d omega;
  Eigen::Matrix3d phi;
  linear_modes(frame, omega, phi);
  CHECK((omega - w).norm() == 0.0);
  Eigen::Matrix3d M =
      Eigen::Vector3d(frame.mass[0], frame.mass[1], frame.mass[2]).asDiagonal();
  CHECK((phi.transpose() * M * phi - Eigen::Matrix3d::Identity()).norm() <=
        1e-8);
  Eigen::Matrix3d K;
  const double k1 = frame.stiffness[0], k2 = frame.stiffness[1],
               k3 = frame.stiffness[2];
  K << k1 + k2, -k2, 0.0, -k2, k2 + k3, -k3, 0.0, -k3, k3;
  Eigen::Matrix3d KP = phi.transpose() * K * phi;
  for (int i = 0; i < 3; ++i) {
    CHECK(KP(i, i) == doctest::Approx(omega(i) * omega(i)).epsilon(1e-10));
  }

  double a0 = -1.0, a1 = -1.0;
  rayleigh_coefficients(frame, a0, a1);
  CHECK(a0 == doctest::Approx(0.5090656855640626).epsilon(1e-12));
  CHECK(a1 == doctest::Approx(0.004076617073349383).epsilon(1e-12));

  BoucWenFrame undamped = frame;
  undamped.damping_ratio = 0.0;
  rayleigh_coefficients(undamped, a0, a1);
  CHECK(a0 == 0.0);
  CHECK(a1 == 0.0);
}

TEST_CASE("linear-limit response matches damped modal superposition") {
  BoucWenFrame frame;
  frame.alpha = 1.0;  // story forces reduce to k * drift exactly
  const Eigen::VectorXd amps = vec4(1.0, 0.8, 0.6, 0.4);
  const double dt = 0.002;
  const double sim = bouc_wen_drift(amps, frame, dt);

  Eigen::Matrix3d K;
  const double k1 = frame.stiffness[0], k2 = frame.stiffness[1],
               k3 = frame.stiffness[2];
  K << k1 + k2, -k2, 0.0, -k2, k2 + k3, -k3, 0.0, -k3, k3;
  const double m = frame.mass[0];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(K / m);
  const Eigen::Vector3d w = es.eigenvalues().cwiseSqrt();
  const Eigen::Matrix3d phi = es.eigenvectors() / std::sqrt(m);

  const double zt = frame.damping_ratio;
  const double a0 = 2.0 * zt * w(0) * w(1) / (w(0) + w(1));
  const double a1 = 2.0 * zt / (w(0) + w(1));

  const double freq[4] = {2.0 * M_PI, 4.0 * M_PI, 8.0 * M_PI, 16.0 * M_PI};
  const bool is_sin[4] = {true, true, false, true};

  const auto n_steps = static_cast<int>(std::llround(frame.duration / dt));
  double max_drift = 0.0;
  Eigen::Matrix3Xd u = Eigen::Matrix3Xd::Zero(3, n_steps + 1);
  for (int r = 0; r < 3; ++r) {
    const double wr = w(r);
    const double zr = 0.5 * (a0 / wr + a1 * wr);
    const double wd = wr * std::sqrt(1.0 - zr * zr);
    const double gr = phi.col(r).sum() * (m / 6.0);
    double qp0 = 0.0, qd0 = 0.0;
    double R[4], th[4];
    for (int j = 0; j < 4; ++j) {
      const double c = gr * amps(j);
      const double d2 = wr * wr - freq[j] * freq[j];
      const double dz = 2.0 * zr * wr * freq[j];
      R[j] = c / std::sqrt(d2 * d2 + dz * dz);
      th[j] = std::atan2(dz, d2);
      if (is_sin[j]) {
        qp0 += -R[j] * std::sin(th[j]);
        qd0 += R[j] * freq[j] * std::cos(th[j]);
      } else {
        qp0 += R[j] * std::cos(th[j]);
        qd0 += R[j] * freq[j] * std::sin(th[j]);
      }
    }
    const double A = -qp0;
    const double B = (zr * wr * A - qd0) / wd;
    for (int sidx = 0; sidx <= n_steps; ++sidx) {
      const double t = dt * sidx;
      double q = std::exp(-zr * wr * t) *
                 (A * std::cos(wd * t) + B * std::sin(wd * t));
      for (int j = 0; j < 4; ++j) {
        q += is_sin[j] ? R[j] * std::sin(freq[j] * t - th[j])
                       : R[j] * std::cos(freq[j] * t - th[j]);
      }
      u.col(sidx) += phi.col(r) * q;
    }
  }
  for (int sidx = 0; sidx <= n_steps; ++sidx) {
    max_drift = std::max(max_drift, std::fabs(u(0, sidx)));
    max_drift = std::max(max_drift, std::fabs(u(1, sidx) - u(0, sidx)));
    max_drift = std::max(max_drift, std::fabs(u(2, sidx) - u(1, sidx)));
  }
  CHECK(sim == doctest::Approx(max_drift).epsilon(1e-6));
}

TEST_CASE("hysteretic response is self-convergent in the time step") {
  BoucWenFrame frame;
  const Eigen::VectorXd amps = vec4(10.0, 8.0, 6.0, 4.0);
  const double d2 = bouc_wen_drift(amps, frame, 0.002);
  const double d1 = bouc_wen_drift(amps, frame, 0.001);
  CHECK(d2 > frame.yield_disp);  // the run actually exercises the hysteresis
  CHECK(std::fabs(d2 - d1) / d1 <= 1e-3);
}

TEST_CASE("undamped unforced linear frame conserves mechanical energy") {
  BoucWenFrame frame;
  frame.alpha = 1.0;
  frame.damping_ratio = 0.0;
  std::vector<double> energy;
  bouc_wen_response(frame, Eigen::VectorXd::Zero(4), 0.002,
                    Eigen::Vector3d(0.01, 0.02, 0.015), Eigen::Vector3d::Zero(),
                    false, &energy);
  REQUIRE(energy.size() == 5001);
  const double e0 = energy.front();
  CHECK(e0 > 0.0);
  double lo = e0, hi = e0;
  for (double e : energy) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  CHECK((hi - lo) / e0 <= 1e-4);
}

TEST_CASE("integration guards reject bad steps and diverged states") {
  BoucWenFrame frame;
  const Eigen::VectorXd amps = vec4(1.0, 1.0, 1.0, 1.0);
  CHECK_THROWS_AS(bouc_wen_drift(amps, frame, 0.0), ConfigError);
  CHECK_THROWS_AS(bouc_wen_drift(amps, frame, -0.002), ConfigError);
  CHECK_THROWS_AS(bouc_wen_drift(amps, frame, 0.003), ConfigError);
  CHECK_THROWS_AS(bouc_wen_response(frame, vec3(1.0, 1.0, 1.0), 0.002,
                                    Eigen::Vector3d::Zero(),
                                    Eigen::Vector3d::Zero(), true),
                  DimensionMismatch);
  CHECK_THROWS_AS(bouc_wen_drift(Eigen::VectorXd::Constant(4, 1e7), frame),
                  NonFiniteState);
}

TEST_CASE("benchmark registry presets") {
  Benchmark toy = make_benchmark("toy");
  CHECK(toy.model.name() == "toy");
  CHECK(toy.model.dimension() == 2);
  CHECK(toy.inputs.dimension() == 2);
  CHECK(toy.inputs.marginals[0].kind == Marginal::StandardGaussian);
  CHECK(toy.preset_ymin == -5.0);
  CHECK(toy.preset_ymax == 3.0);
  CHECK(toy.preset_tail == TailMode::Both);
  CHECK(toy.default_reference_samples == 0);
  CHECK(toy.model(vec2(1.0, 2.0)) == -1.0);

  Benchmark ish = make_benchmark("ishigami");
  CHECK(ish.model.dimension() == 3);
  CHECK(ish.inputs.dimension() == 3);
  CHECK(ish.inputs.marginals[2].kind == Marginal::Uniform);
  CHECK(ish.inputs.marginals[2].lower == doctest::Approx(-M_PI));
  CHECK(ish.inputs.marginals[2].upper == doctest::Approx(M_PI));
  CHECK(ish.preset_ymin == -10.0);
  CHECK(ish.preset_ymax == 15.0);
  CHECK(ish.preset_tail == TailMode::Both);
  CHECK(ish.default_reference_samples == 1'000'000);

  Benchmark bw = make_benchmark("bouc_wen");
  CHECK(bw.model.dimension() == 4);
  CHECK(bw.inputs.dimension() == 4);
  CHECK(bw.inputs.marginals[0].kind == Marginal::StandardGaussian);
  CHECK(bw.preset_ymin == 0.0);
  CHECK(bw.preset_ymax == 0.12);
  CHECK(bw.preset_tail == TailMode::CcdfOnly);
  CHECK(bw.default_reference_samples == 100'000);
  CHECK(bw.model(Eigen::VectorXd::Zero(4)) == 0.0);

  CHECK_THROWS_AS(make_benchmark("three_body"), ConfigError);
}
