#include "algp/sampling.hpp"

#include <cmath>

#include "algp/normal.hpp"
#include "algp/rng.hpp"
#include "algp/sobol.hpp"

namespace algp {

Marginal Marginal::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw ConfigError("Marginal::uniform: lower bound must be below upper");
  }
  return Marginal{Uniform, lo, hi};
}

double Marginal::inv_cdf(double u) const {
  if (kind == StandardGaussian) {
    return std_normal_inv_cdf(u);
  }
  return lower + u * (upper - lower);
}

double Marginal::cdf(double x) const {
  if (kind == StandardGaussian) {
    return std_normal_cdf(x);
  }
  if (x <= lower) return 0.0;
  if (x >= upper) return 1.0;
  return (x - lower) / (upper - lower);
}

void RandomInputSpec::validate() const {
  if (marginals.empty()) {
    throw ConfigError("RandomInputSpec: dimension must be at least 1");
  }
  for (const Marginal& m : marginals) {
    if (m.kind == Marginal::Uniform && !(m.lower < m.upper)) {
      throw ConfigError("RandomInputSpec: uniform marginal with empty support");
    }
  }
}

RandomInputSpec RandomInputSpec::gaussians(int n) {
  RandomInputSpec s;
  s.marginals.assign(n, Marginal::gaussian());
  return s;
}

RandomInputSpec RandomInputSpec::uniforms(int n, double lo, double hi) {
  RandomInputSpec s;
  s.marginals.assign(n, Marginal::uniform(lo, hi));
  return s;
}

CandidatePool sample_pool(const RandomInputSpec& spec, std::int64_t n_samples,
                          std::uint64_t seed) {
  spec.validate();
  if (n_samples < 1) {
    throw ConfigError("sample_pool: sample count must be at least 1");
  }
  const int n = spec.dimension();
  CandidatePool pool;
  pool.points.resize(n_samples, n);
  pool.seed = seed;
  Rng rng(seed);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    for (int j = 0; j < n; ++j) {
      pool.points(i, j) = spec.marginals[j].inv_cdf(rng.uniform01());
    }
  }
  return pool;
}

Eigen::MatrixXd map_to_marginals(const RandomInputSpec& spec,
                                 const Eigen::MatrixXd& unit_points) {
  spec.validate();
  if (unit_points.cols() != spec.dimension()) {
    throw DimensionMismatch("map_to_marginals: point dimension mismatch");
  }
  Eigen::MatrixXd out(unit_points.rows(), unit_points.cols());
  for (Eigen::Index i = 0; i < unit_points.rows(); ++i) {
    for (Eigen::Index j = 0; j < unit_points.cols(); ++j) {
      double u = unit_points(i, j);
      const double tiny = 0x1.0p-53;
      if (u < tiny) u = tiny;
      if (u > 1.0 - tiny) u = 1.0 - tiny;
      out(i, j) = spec.marginals[j].inv_cdf(u);
    }
  }
  return out;
}

Eigen::MatrixXd initial_design(const RandomInputSpec& spec, int d,
                               std::uint64_t seed) {
  spec.validate();
  if (d < 2) {
    throw ConfigError("initial_design: need at least 2 points");
  }
  const int n = spec.dimension();
  Rng rng(seed);
  std::vector<double> shift(n);
  for (int j = 0; j < n; ++j) {
    shift[j] = rng.uniform01();
  }

  SobolSequence sobol(n);
  Eigen::MatrixXd unit(d, n);
  std::vector<double> buf(n);
  for (int i = 0; i < d; ++i) {
    sobol.next(buf.data());
    for (int j = 0; j < n; ++j) {
      double t = buf[j] + shift[j];
      t -= std::floor(t);
      unit(i, j) = t;
    }
  }
  return map_to_marginals(spec, unit);
}

}  // namespace algp
