#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "algp/errors.hpp"

namespace algp {

struct Prediction {
  double mean = 0.0;
  double std = 0.0;
};

// Training data; one input per row. Inserting a point closer than 1e-10
// (standardized Euclidean) to an existing one is rejected.
class DesignSet {
 public:
  DesignSet(Eigen::MatrixXd inputs, Eigen::VectorXd outputs);

  const Eigen::MatrixXd& inputs() const { return X_; }
  const Eigen::VectorXd& outputs() const { return y_; }
  int dimension() const { return static_cast<int>(X_.cols()); }
  int size() const { return static_cast<int>(X_.rows()); }

  bool near_duplicate(const Eigen::VectorXd& x, double tol = 1e-10) const;

  // Returns false (leaving the design unchanged) when x is a near-duplicate.
  bool try_add(const Eigen::VectorXd& x, double y, double tol = 1e-10);

 private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
};

struct FitOptions {
  bool optimize = true;
  // Used when optimize == false; log length-scales in standardized input units.
  Eigen::VectorXd fixed_log_ls;
  int multistarts = 5;
  int max_evals_per_start = 250;
  std::uint64_t seed = 0;
  std::optional<Eigen::VectorXd> warm_start;
};

// Noise-free Gaussian-process interpolator: anisotropic squared-exponential
// correlation, constant trend estimated by generalized least squares,
// length-scales chosen by maximizing the concentrated log marginal likelihood.
class GpSurrogate {
 public:
  static GpSurrogate fit(const DesignSet& design, const FitOptions& opts = {});

  Prediction predict_one(const Eigen::VectorXd& x) const;
  std::vector<Prediction> predict(const Eigen::MatrixXd& points) const;

  // mean - kbar*std, mean, mean + kbar*std for every point.
  void three_fold_predict(const Eigen::MatrixXd& points, double kbar,
                          Eigen::VectorXd& upper, Eigen::VectorXd& mid,
                          Eigen::VectorXd& lower) const;

  int dimension() const { return static_cast<int>(mx_.size()); }
  int size() const { return static_cast<int>(y_raw_.size()); }
  bool degenerate() const { return degenerate_; }
  const Eigen::VectorXd& log_length_scales() const { return log_ls_; }
  double process_variance() const { return s2_; }
  double nugget() const { return nugget_; }
  double trend() const { return mu_; }
  double output_scale() const { return sy_; }
  double output_shift() const { return my_; }

  // Read-only view consumed by the batch prediction kernels.
  struct View {
    const Eigen::MatrixXd* Zw;       // standardized inputs scaled by 1/ell
    const Eigen::VectorXd* zq;       // row squared norms of Zw
    const Eigen::MatrixXd* L;        // Cholesky factor of the correlation
    const Eigen::VectorXd* u;        // L^-1 * 1
    const Eigen::VectorXd* rt;       // L^-1 * (ys - mu*1)
    const Eigen::VectorXd* y_raw;
    const Eigen::RowVectorXd* mx;
    const Eigen::RowVectorXd* sx;
    const Eigen::VectorXd* inv_ls;
    double mu, s2, one, my, sy;
    bool degenerate;
    double const_value;
  };
  View view() const;

 private:
  GpSurrogate() = default;

  Eigen::MatrixXd Zw_;
  Eigen::VectorXd zq_;
  Eigen::MatrixXd L_;
  Eigen::VectorXd u_, rt_;
  Eigen::VectorXd y_raw_;
  Eigen::RowVectorXd mx_, sx_;
  Eigen::VectorXd log_ls_, inv_ls_;
  double my_ = 0.0, sy_ = 1.0;
  double mu_ = 0.0, s2_ = 1.0, one_ = 1.0, nugget_ = 0.0;
  bool degenerate_ = false;
  double const_value_ = 0.0;
};

}  // namespace algp
