#include "algp/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "algp/kernels.hpp"

namespace algp {

namespace {

double ecdf(const std::vector<double>& sorted, double y) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), y);
  return double(it - sorted.begin()) / double(sorted.size());
}

}  // namespace

double ThreeFoldCdf::f_plus(double y) const { return ecdf(upper, y); }
double ThreeFoldCdf::f_mid(double y) const { return ecdf(mid, y); }
double ThreeFoldCdf::f_minus(double y) const { return ecdf(lower, y); }

ThreeFoldCdf make_three_fold(const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& sd, double kbar) {
  if (mean.size() != sd.size()) {
    throw DimensionMismatch("make_three_fold: mean/sd size mismatch");
  }
  if (mean.size() == 0) {
    throw EmptyPool("make_three_fold: empty pool");
  }
  if (!(kbar > 0.0)) {
    throw ConfigError("make_three_fold: band factor must be positive");
  }
  const auto n = mean.size();
  ThreeFoldCdf cdf;
  cdf.upper.resize(n);
  cdf.mid.resize(n);
  cdf.lower.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cdf.upper[i] = mean(i) - kbar * sd(i);
    cdf.mid[i] = mean(i);
    cdf.lower[i] = mean(i) + kbar * sd(i);
  }
  std::sort(cdf.upper.begin(), cdf.upper.end());
  std::sort(cdf.mid.begin(), cdf.mid.end());
  std::sort(cdf.lower.begin(), cdf.lower.end());
  return cdf;
}

ThreeFoldCdf estimate_three_fold_cdf(const GpSurrogate& surrogate,
                                     const CandidatePool& pool, double kbar,
                                     bool parallel) {
  if (pool.size() == 0) {
    throw EmptyPool("estimate_three_fold_cdf: empty pool");
  }
  Eigen::VectorXd mean, sd;
  kernels::gp_predict_batch(surrogate, pool.points, mean, sd, parallel);
  return make_three_fold(mean, sd, kbar);
}

double ccdf(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("ccdf: probability outside [0, 1]");
  }
  return 1.0 - p;
}

MomentSet moments_from_cdf(const std::function<double(double)>& cdf, double lo,
                           double hi, int nodes) {
  if (!(lo < hi)) {
    throw ConfigError("moments_from_cdf: empty integration range");
  }
  MomentSet m;
  if (cdf(lo) > 1e-6 || 1.0 - cdf(hi) > 1e-6) {
    m.range_warning = true;
  }

  // Raw moments from the CDF tails over [0, A] where A covers both range ends.
  const double A = std::max(std::fabs(lo), std::fabs(hi));
  const double h = A / double(nodes);
  double raw[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i <= nodes; ++i) {
    const double y = h * double(i);
    const double fp = cdf(y);
    const double fm = cdf(-y);
    const double weight = (i == 0 || i == nodes) ? 0.5 : 1.0;
    double ypow = 1.0;  // y^(j-1)
    for (int j = 1; j <= 4; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      raw[j] += weight * double(j) * ypow * (1.0 - fp + sign * fm);
      ypow *= y;
    }
  }
  for (int j = 1; j <= 4; ++j) {
    raw[j] *= h;
  }

  const double m1 = raw[1];
  const double var = raw[2] - m1 * m1;
  m.mean = m1;
  m.std = var > 0.0 ? std::sqrt(var) : 0.0;
  if (var > 0.0) {
    m.skewness = (raw[3] - 3.0 * m1 * raw[2] + 2.0 * m1 * m1 * m1) /
                 (m.std * m.std * m.std);
    m.kurtosis = (raw[4] - 4.0 * m1 * raw[3] + 6.0 * m1 * m1 * raw[2] -
                  3.0 * m1 * m1 * m1 * m1) /
                 (var * var);
  }
  return m;
}

MomentSet sample_moments(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw DegenerateSample("sample_moments: need at least 2 values");
  }
  const double n = double(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    c2 += d2;
    c3 += d2 * d;
    c4 += d2 * d2;
  }
  c2 /= n;
  c3 /= n;
  c4 /= n;
  if (!(c2 > 0.0)) {
    throw DegenerateSample("sample_moments: constant sample");
  }
  MomentSet m;
  m.mean = mean;
  m.std = std::sqrt(c2);
  m.skewness = c3 / (m.std * m.std * m.std);
  m.kurtosis = c4 / (c2 * c2);
  return m;
}

ReferenceCdf::ReferenceCdf(std::vector<double> ys, std::vector<double> fs)
    : ys_(std::move(ys)), fs_(std::move(fs)) {
  if (ys_.size() != fs_.size() || ys_.size() < 2) {
    throw ReferenceUnavailable("ReferenceCdf: need at least 2 rows");
  }
  for (std::size_t i = 1; i < ys_.size(); ++i) {
    if (!(ys_[i] >= ys_[i - 1]) || fs_[i] < fs_[i - 1]) {
      throw ReferenceUnavailable("ReferenceCdf: rows must be nondecreasing");
    }
  }
}

ReferenceCdf ReferenceCdf::from_samples(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const auto n = samples.size();
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    fs[i] = double(i + 1) / double(n);
  }
  return ReferenceCdf(std::move(samples), std::move(fs));
}

double ReferenceCdf::operator()(double y) const {
  if (y <= ys_.front()) return (y == ys_.front()) ? fs_.front() : 0.0;
  if (y >= ys_.back()) return fs_.back();
  const auto it = std::upper_bound(ys_.begin(), ys_.end(), y);
  const auto i = it - ys_.begin();
  const double y0 = ys_[i - 1], y1 = ys_[i];
  const double f0 = fs_[i - 1], f1 = fs_[i];
  if (y1 <= y0) return f1;
  return f0 + (f1 - f0) * (y - y0) / (y1 - y0);
}

double epsilon_e(const std::function<double(double)>& estimated,
                 const ReferenceCdf& reference, double ymin, double ymax,
                 TailMode tail) {
  if (!(ymin < ymax)) {
    throw ConfigError("epsilon_e: empty range");
  }
  const int intervals = 100;
  const double h = (ymax - ymin) / double(intervals);
  const double floor_p = 1.0 / double(reference.sample_count());
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double y = ymin + h * double(i);
    const double fr = reference(y);
    double den;
    switch (tail) {
      case TailMode::Both:
        den = std::min(fr, 1.0 - fr);
        break;
      case TailMode::CdfOnly:
        den = fr;
        break;
      default:
        den = 1.0 - fr;
        break;
    }
    den = std::max(den, floor_p);
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    acc += w * std::fabs(estimated(y) - fr) / den;
  }
  return acc * h / (ymax - ymin);
}

}  // namespace algp
