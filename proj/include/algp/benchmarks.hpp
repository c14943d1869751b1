#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "algp/model.hpp"
#include "algp/sampling.hpp"
#include "algp/types.hpp"

namespace algp {

// min(x1 - x2, x1 + x2) over two standard Gaussian inputs.
double toy_model(const Eigen::VectorXd& x);

// Closed-form CDF of the toy model output.
double toy_exact_cdf(double y);

double ishigami(const Eigen::VectorXd& x, double a = 7.0, double b = 0.1);

// Three-story shear frame with smooth hysteretic story forces.
struct BoucWenFrame {
  std::array<double, 3> stiffness{3.0e8, 2.8e8, 1.5e8};  // N/m per story
  std::array<double, 3> mass{1.0e6, 1.0e6, 1.0e6};       // kg per floor
  double alpha = 0.1;          // post- to pre-yield stiffness ratio
  int n_exp = 5;               // hysteresis smoothness exponent
  double amp_a = 1.0;
  double yield_disp = 0.04;    // m
  double damping_ratio = 0.05; // on the first two modes
  double duration = 10.0;      // s

  double gamma() const;  // shared value of the two hysteresis decay constants
};

// Natural frequencies (rad/s, ascending) of the initial linear frame.
Eigen::Vector3d linear_modal_frequencies(const BoucWenFrame& frame);

// Frequencies plus mass-normalized mode shapes (columns).
void linear_modes(const BoucWenFrame& frame, Eigen::Vector3d& omega,
                  Eigen::Matrix3d& shapes);

// Rayleigh coefficients (C = a0*M + a1*K) for the frame's damping ratio on
// the first two modes.
void rayleigh_coefficients(const BoucWenFrame& frame, double& a0, double& a1);

// Maximum absolute interstory drift over all stories and the full duration,
// under the four-amplitude harmonic forcing. Throws NonFiniteState if the
// integration blows up.
double bouc_wen_drift(const Eigen::VectorXd& x, const BoucWenFrame& frame,
                      double dt = 0.002);

// General entry point used by the physics tests: optional initial conditions,
// switchable forcing, optional linear mechanical-energy trace.
double bouc_wen_response(const BoucWenFrame& frame, const Eigen::VectorXd& amps,
                         double dt, const Eigen::Vector3d& x0,
                         const Eigen::Vector3d& v0, bool forcing,
                         std::vector<double>* energy_trace = nullptr);

// A registered benchmark: model, input distribution, preset learning range.
struct Benchmark {
  ModelFunction model;
  RandomInputSpec inputs;
  double preset_ymin = 0.0;
  double preset_ymax = 1.0;
  TailMode preset_tail = TailMode::Both;
  // 0 means the reference CDF is exact rather than Monte Carlo.
  std::int64_t default_reference_samples = 0;
};

Benchmark make_benchmark(const std::string& name);

}  // namespace algp
