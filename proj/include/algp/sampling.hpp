#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "algp/errors.hpp"

namespace algp {

// One independent input marginal.
struct Marginal {
  enum Kind { StandardGaussian, Uniform };

  Kind kind = StandardGaussian;
  double lower = 0.0;
  double upper = 1.0;

  static Marginal gaussian() { return Marginal{StandardGaussian, 0.0, 1.0}; }
  static Marginal uniform(double lo, double hi);

  double inv_cdf(double u) const;  // u strictly inside (0, 1)
  double cdf(double x) const;
};

struct RandomInputSpec {
  std::vector<Marginal> marginals;

  int dimension() const { return static_cast<int>(marginals.size()); }
  void validate() const;

  static RandomInputSpec gaussians(int n);
  static RandomInputSpec uniforms(int n, double lo, double hi);
};

// Monte Carlo population used both as training-candidate set and as the
// common integration population for the CDF folds.
struct CandidatePool {
  Eigen::MatrixXd points;  // N x n, one sample per row
  std::uint64_t seed = 0;
  std::int64_t generation = 0;

  std::int64_t size() const { return points.rows(); }
};

CandidatePool sample_pool(const RandomInputSpec& spec, std::int64_t n_samples,
                          std::uint64_t seed);

// Maps unit-hypercube points through the marginal inverse CDFs.
Eigen::MatrixXd map_to_marginals(const RandomInputSpec& spec,
                                 const Eigen::MatrixXd& unit_points);

// Low-discrepancy design of d points: Sobol sequence with a random modulo-1
// shift drawn from the seed, mapped to the input distribution.
Eigen::MatrixXd initial_design(const RandomInputSpec& spec, int d,
                               std::uint64_t seed);

}  // namespace algp
