#pragma once

#include <Eigen/Core>

#include "algp/benchmarks.hpp"
#include "algp/gp.hpp"

namespace algp::kernels {

// Blocked batch prediction over a point matrix (one point per row). Results
// are independent of the thread count: the pool is cut into fixed-size blocks
// and each block is evaluated with identical serial arithmetic.
void gp_predict_batch(const GpSurrogate& gp,
                      const Eigen::Ref<const Eigen::MatrixXd>& points,
                      Eigen::VectorXd& mean, Eigen::VectorXd& sd,
                      bool parallel);

// Serial reference implementation (same block arithmetic, no threading).
void gp_predict_batch_serial(const GpSurrogate& gp,
                             const Eigen::Ref<const Eigen::MatrixXd>& points,
                             Eigen::VectorXd& mean, Eigen::VectorXd& sd);

// Batch of hysteretic-frame simulations, one amplitude vector per row.
void boucwen_batch(const BoucWenFrame& frame,
                   const Eigen::Ref<const Eigen::MatrixXd>& amplitudes,
                   double dt, Eigen::VectorXd& out, bool parallel);

void boucwen_batch_serial(const BoucWenFrame& frame,
                          const Eigen::Ref<const Eigen::MatrixXd>& amplitudes,
                          double dt, Eigen::VectorXd& out);

}  // namespace algp::kernels
