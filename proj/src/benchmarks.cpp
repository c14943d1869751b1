#include "algp/benchmarks.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "algp/normal.hpp"

namespace algp {

double toy_model(const Eigen::VectorXd& x) {
  if (x.size() != 2) {
    throw DimensionMismatch("toy_model: expected 2 inputs");
  }
  return std::min(x(0) - x(1), x(0) + x(1));
}

double toy_exact_cdf(double y) {
  const double p = std_normal_cdf(y / std::sqrt(2.0));
  return p * (2.0 - p);
}

double ishigami(const Eigen::VectorXd& x, double a, double b) {
  if (x.size() != 3) {
    throw DimensionMismatch("ishigami: expected 3 inputs");
  }
  const double s1 = std::sin(x(0));
  const double s2 = std::sin(x(1));
  return s1 + a * s2 * s2 + b * x(2) * x(2) * x(2) * x(2) * s1;
}

double BoucWenFrame::gamma() const {
  return 1.0 / (2.0 * std::pow(yield_disp, n_exp));
}

namespace {

Eigen::Matrix3d stiffness_matrix(const BoucWenFrame& f) {
  const double k1 = f.stiffness[0], k2 = f.stiffness[1], k3 = f.stiffness[2];
  Eigen::Matrix3d K;
  K << k1 + k2, -k2, 0.0,
       -k2, k2 + k3, -k3,
       0.0, -k3, k3;
  return K;
}

}  // namespace

void linear_modes(const BoucWenFrame& frame, Eigen::Vector3d& omega,
                  Eigen::Matrix3d& shapes) {
  Eigen::Matrix3d M = Eigen::Vector3d(frame.mass[0], frame.mass[1],
                                      frame.mass[2]).asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix3d> es(
      stiffness_matrix(frame), M);
  omega = es.eigenvalues().cwiseSqrt();
  shapes = es.eigenvectors();  // M-normalized, ascending eigenvalues
}

Eigen::Vector3d linear_modal_frequencies(const BoucWenFrame& frame) {
  Eigen::Vector3d w;
  Eigen::Matrix3d phi;
  linear_modes(frame, w, phi);
  return w;
}

void rayleigh_coefficients(const BoucWenFrame& frame, double& a0, double& a1) {
  if (frame.damping_ratio == 0.0) {
    a0 = 0.0;
    a1 = 0.0;
    return;
  }
  const Eigen::Vector3d w = linear_modal_frequencies(frame);
  const double zeta = frame.damping_ratio;
  a0 = 2.0 * zeta * w(0) * w(1) / (w(0) + w(1));
  a1 = 2.0 * zeta / (w(0) + w(1));
}

namespace {

struct FrameWork {
  double k[3], m[3];
  double alpha, A, gam, eta;
  int nexp;
  double a0, a1;
  double amp[4];
  bool forcing;
};

inline double hyst_pow_odd(double z, int n) {
  // |z|^(n-1) * z, written as sign-preserving integer powers for n == 5.
  if (n == 5) {
    const double z2 = z * z;
    return z2 * z2 * z;
  }
  return std::pow(std::fabs(z), n - 1) * z;
}

inline double hyst_pow_even(double z, int n) {
  // |z|^n
  if (n == 5) {
    const double z2 = z * z;
    return z2 * z2 * std::fabs(z);
  }
  return std::pow(std::fabs(z), n);
}

inline void deriv(const FrameWork& w, const double s[9], double t, double out[9]) {
  const double* x = s;
  const double* xd = s + 3;
  const double* z = s + 6;

  const double v[3] = {x[0], x[1] - x[0], x[2] - x[1]};
  const double vd[3] = {xd[0], xd[1] - xd[0], xd[2] - xd[1]};

  double r[3];
  for (int i = 0; i < 3; ++i) {
    r[i] = w.k[i] * (w.alpha * v[i] + (1.0 - w.alpha) * z[i]);
  }

  double wave = 0.0;
  if (w.forcing) {
    const double tp = 2.0 * M_PI * t;
    wave = w.amp[0] * std::sin(tp) + w.amp[1] * std::sin(2.0 * tp) +
           w.amp[2] * std::cos(4.0 * tp) + w.amp[3] * std::sin(8.0 * tp);
  }

  // Damping against the initial linear stiffness: C = a0*M + a1*K.
  const double kxd[3] = {
      (w.k[0] + w.k[1]) * xd[0] - w.k[1] * xd[1],
      -w.k[1] * xd[0] + (w.k[1] + w.k[2]) * xd[1] - w.k[2] * xd[2],
      -w.k[2] * xd[1] + w.k[2] * xd[2]};

  for (int i = 0; i < 3; ++i) {
    const double f = w.m[i] / 6.0 * wave;
    const double damp = w.a0 * w.m[i] * xd[i] + w.a1 * kxd[i];
    const double restoring = (i < 2) ? r[i] - r[i + 1] : r[i];
    out[i] = xd[i];
    out[3 + i] = (f - damp - restoring) / w.m[i];
  }
  for (int i = 0; i < 3; ++i) {
    out[6 + i] = w.A * vd[i] - w.gam * std::fabs(vd[i]) * hyst_pow_odd(z[i], w.nexp) -
                 w.eta * hyst_pow_even(z[i], w.nexp) * vd[i];
  }
}

}  // namespace

double bouc_wen_response(const BoucWenFrame& frame, const Eigen::VectorXd& amps,
                         double dt, const Eigen::Vector3d& x0,
                         const Eigen::Vector3d& v0, bool forcing,
                         std::vector<double>* energy_trace) {
  if (amps.size() != 4) {
    throw DimensionMismatch("bouc_wen_response: expected 4 forcing amplitudes");
  }
  if (!(dt > 0.0)) {
    throw ConfigError("bouc_wen_response: time step must be positive");
  }
  const double steps_real = frame.duration / dt;
  const auto n_steps = static_cast<std::int64_t>(std::llround(steps_real));
  if (std::fabs(steps_real - double(n_steps)) > 1e-9 || n_steps < 1) {
    throw ConfigError("bouc_wen_response: dt must divide the duration evenly");
  }

  FrameWork w{};
  for (int i = 0; i < 3; ++i) {
    w.k[i] = frame.stiffness[i];
    w.m[i] = frame.mass[i];
  }
  w.alpha = frame.alpha;
  w.A = frame.amp_a;
  w.gam = frame.gamma();
  w.eta = w.gam;
  w.nexp = frame.n_exp;
  rayleigh_coefficients(frame, w.a0, w.a1);
  for (int i = 0; i < 4; ++i) {
    w.amp[i] = amps(i);
  }
  w.forcing = forcing;

  double s[9] = {x0(0), x0(1), x0(2), v0(0), v0(1), v0(2), 0.0, 0.0, 0.0};
  double k1[9], k2[9], k3[9], k4[9], tmp[9];

  auto drift_max = [](const double st[9]) {
    const double v1 = std::fabs(st[0]);
    const double v2 = std::fabs(st[1] - st[0]);
    const double v3 = std::fabs(st[2] - st[1]);
    return std::max(v1, std::max(v2, v3));
  };
  auto energy = [&w](const double st[9]) {
    const double v[3] = {st[0], st[1] - st[0], st[2] - st[1]};
    double e = 0.0;
    for (int i = 0; i < 3; ++i) {
      e += 0.5 * w.m[i] * st[3 + i] * st[3 + i] + 0.5 * w.k[i] * v[i] * v[i];
    }
    return e;
  };

  double vmax = drift_max(s);
  if (energy_trace) energy_trace->push_back(energy(s));

  double t = 0.0;
  for (std::int64_t step = 0; step < n_steps; ++step) {
    deriv(w, s, t, k1);
    for (int i = 0; i < 9; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
    deriv(w, tmp, t + 0.5 * dt, k2);
    for (int i = 0; i < 9; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
    deriv(w, tmp, t + 0.5 * dt, k3);
    for (int i = 0; i < 9; ++i) tmp[i] = s[i] + dt * k3[i];
    deriv(w, tmp, t + dt, k4);
    for (int i = 0; i < 9; ++i) {
      s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    t += dt;
    const double dm = drift_max(s);
    if (dm > vmax) vmax = dm;
    if (energy_trace) energy_trace->push_back(energy(s));
    if ((step & 127) == 0 && !std::isfinite(vmax)) {
      throw NonFiniteState("bouc_wen_response: integration diverged");
    }
  }
  if (!std::isfinite(vmax)) {
    throw NonFiniteState("bouc_wen_response: integration diverged");
  }
  return vmax;
}

double bouc_wen_drift(const Eigen::VectorXd& x, const BoucWenFrame& frame,
                      double dt) {
  return bouc_wen_response(frame, x, dt, Eigen::Vector3d::Zero(),
                           Eigen::Vector3d::Zero(), true);
}

Benchmark make_benchmark(const std::string& name) {
  if (name == "toy") {
    return Benchmark{
        ModelFunction("toy", 2, [](const Eigen::VectorXd& x) { return toy_model(x); }),
        RandomInputSpec::gaussians(2), -5.0, 3.0, TailMode::Both, 0};
  }
  if (name == "ishigami") {
    return Benchmark{
        ModelFunction("ishigami", 3,
                      [](const Eigen::VectorXd& x) { return ishigami(x); }),
        RandomInputSpec::uniforms(3, -M_PI, M_PI), -10.0, 15.0, TailMode::Both,
        1'000'000};
  }
  if (name == "bouc_wen") {
    BoucWenFrame frame;
    return Benchmark{
        ModelFunction("bouc_wen", 4,
                      [frame](const Eigen::VectorXd& x) {
                        return bouc_wen_drift(x, frame);
                      }),
        RandomInputSpec::gaussians(4), 0.0, 0.12, TailMode::CcdfOnly, 100'000};
  }
  throw ConfigError("make_benchmark: unknown benchmark '" + name + "'");
}

}  // namespace algp
