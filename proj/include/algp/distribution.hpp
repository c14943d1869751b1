#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "algp/gp.hpp"
#include "algp/sampling.hpp"
#include "algp/types.hpp"

namespace algp {

// Consistent triple of empirical CDFs built from the three fold outputs of a
// common Monte Carlo population. Upper fold is mean - kbar*std, so its CDF
// dominates: F_plus >= F_mid >= F_minus everywhere.
struct ThreeFoldCdf {
  std::vector<double> upper;  // sorted samples of mean - kbar*std
  std::vector<double> mid;    // sorted samples of mean
  std::vector<double> lower;  // sorted samples of mean + kbar*std

  std::int64_t size() const { return static_cast<std::int64_t>(mid.size()); }
  double f_plus(double y) const;
  double f_mid(double y) const;
  double f_minus(double y) const;
};

ThreeFoldCdf make_three_fold(const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& sd, double kbar);

ThreeFoldCdf estimate_three_fold_cdf(const GpSurrogate& surrogate,
                                     const CandidatePool& pool, double kbar,
                                     bool parallel = true);

// 1 - p; throws DomainError outside [0, 1].
double ccdf(double p);

struct MomentSet {
  double mean = 0.0;
  double std = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  bool range_warning = false;
};

// Raw moments E(Y^j), j = 1..4, from a CDF alone:
//   E(Y^j) = j * Integral_0^inf y^(j-1) * (1 - F(y) + (-1)^j F(-y)) dy,
// evaluated by trapezoidal quadrature, then converted to central moments.
// Sets range_warning when [lo, hi] leaves more than 1e-6 probability outside.
MomentSet moments_from_cdf(const std::function<double(double)>& cdf, double lo,
                           double hi, int nodes = 4000);

// Population-convention sample moments; throws DegenerateSample when constant.
MomentSet sample_moments(const std::vector<double>& values);

// Piecewise-linear reference CDF; the row count doubles as the resolution
// floor used in tail-weighted denominators.
class ReferenceCdf {
 public:
  ReferenceCdf(std::vector<double> ys, std::vector<double> fs);

  static ReferenceCdf from_samples(std::vector<double> samples);

  double operator()(double y) const;
  std::int64_t sample_count() const { return static_cast<std::int64_t>(ys_.size()); }
  const std::vector<double>& ys() const { return ys_; }
  const std::vector<double>& fs() const { return fs_; }

 private:
  std::vector<double> ys_, fs_;
};

// Tail-weighted relative CDF discrepancy, averaged over a uniform
// 100-interval grid on [ymin, ymax]; the denominator is the reference tail
// expression floored at 1/sample_count.
double epsilon_e(const std::function<double(double)>& estimated,
                 const ReferenceCdf& reference, double ymin, double ymax,
                 TailMode tail);

}  // namespace algp
