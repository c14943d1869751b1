#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "algp/distribution.hpp"
#include "algp/model.hpp"
#include "algp/sampling.hpp"
#include "algp/types.hpp"

namespace algp {

struct AlConfig {
  double ymin = 0.0;
  double ymax = 1.0;
  double eps_bar = 0.2;      // dimensionless tolerance
  double kbar = 2.0;         // fold band factor
  std::int64_t pool_size = 1'000'000;
  int init_size = 12;
  LearnMode mode = LearnMode::GaussianKernel;
  TailMode tail = TailMode::Both;
  std::uint64_t seed = 0;
  int budget = 500;          // added samples beyond the initial design
  int threshold_count = 101; // conventional baseline only

  void validate() const;  // throws ConfigError
};

struct IterationRecord {
  int iteration = 0;
  double w_global = 0.0;  // error measure before this sample was added
  double y_star = 0.0;    // NaN for modes that pick no threshold
  Eigen::VectorXd x_star;
  double model_value = 0.0;
  MomentSet moments_plus, moments_mid, moments_minus;
  bool band_fallback = false;
  double duration_seconds = 0.0;  // excluded from serialized reports
};

enum class Termination { Converged, BudgetExhausted };

std::string to_string(Termination t);

struct RunReport {
  std::string benchmark;
  AlConfig config;
  std::vector<IterationRecord> iterations;
  Termination termination = Termination::Converged;
  double final_w = 0.0;
  ThreeFoldCdf final_cdf;
  MomentSet final_moments;        // mid fold, computed through the CDF integral
  MomentSet final_moments_plus;
  MomentSet final_moments_minus;
  std::int64_t n_model_calls = 0;
  int band_fallbacks = 0;

  void validate() const;
};

// Pointwise tail-weighted band error w(y) = |F_plus - F_minus| / max(tail, floor).
double pointwise_error(const ThreeFoldCdf& cdf, double y, TailMode tail,
                       double floor_p);

// Integral of the pointwise error over [ymin, ymax] (1001-node trapezoid).
double global_error(const ThreeFoldCdf& cdf, const AlConfig& cfg);

// True iff w_global < eps_bar * (ymax - ymin), strictly.
bool stopping_check(double w_global, const AlConfig& cfg);

// Pool-candidate predictive std keyed by nearest predicted mean; supplies the
// bandwidth of the smoothing kernel.
class SigmaLookup {
 public:
  static SigmaLookup build(const Eigen::VectorXd& mean, const Eigen::VectorXd& sd);
  double sigma_near(double y) const;
  std::int64_t size() const { return static_cast<std::int64_t>(mu_.size()); }

 private:
  std::vector<double> mu_, sd_;
};

// Kernel-smoothed band error around y_prime. Dirac mode returns the pointwise
// value; Gaussian mode integrates against a truncated-Gaussian kernel whose
// mass over [ymin, ymax] normalizes to one.
double localized_error(const ThreeFoldCdf& cdf, double y_prime, LearnMode kernel,
                       const SigmaLookup& sigmas, const AlConfig& cfg);

// Maximizer of the localized error over [ymin, ymax]: 1001-node scan plus
// golden-section refinement; ties resolve toward smaller y.
double select_threshold(const ThreeFoldCdf& cdf, const SigmaLookup& sigmas,
                        const AlConfig& cfg);

// Misclassification probability score Phi(-|y_star - mean| / sd); zero when
// sd <= sd_floor (training points are never re-selected).
double learning_score(double mean, double sd, double y_star, double sd_floor);

// Argmax of the learning score subject to the prediction-band constraint
// mean in [ymin - kbar*sd, ymax + kbar*sd]; falls back to the unconstrained
// argmax (flagging it) when no candidate is in band. Ties -> lowest index.
std::int64_t select_candidate(const Eigen::VectorXd& mean,
                              const Eigen::VectorXd& sd, double y_star,
                              const AlConfig& cfg, double sd_floor,
                              bool* fallback = nullptr);

// Same constraint with score = predictive std.
std::int64_t select_candidate_mov(const Eigen::VectorXd& mean,
                                  const Eigen::VectorXd& sd,
                                  const AlConfig& cfg,
                                  bool* fallback = nullptr);

// Called with the fold CDFs of each iteration as they are built.
using FoldObserver = std::function<void(const ThreeFoldCdf&)>;

RunReport run_active_loop(const ModelFunction& model,
                          const RandomInputSpec& spec, const AlConfig& cfg,
                          const FoldObserver& observe = {});

// Threshold-sweeping baseline: fixed-threshold learning at each of
// threshold_count levels (midpoint outward, alternating), reusing one
// cumulative design.
RunReport run_conventional_baseline(const ModelFunction& model,
                                    const RandomInputSpec& spec,
                                    const AlConfig& cfg,
                                    const FoldObserver& observe = {});

}  // namespace algp
