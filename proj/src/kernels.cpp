#include "algp/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace algp::kernels {

namespace {

constexpr Eigen::Index kBlock = 2048;
constexpr double kSnapSq = 1e-20;  // squared weighted distance for exact re-query

void predict_block(const GpSurrogate::View& g,
                   const Eigen::Ref<const Eigen::MatrixXd>& points,
                   Eigen::Index start, Eigen::Index count, double* mean,
                   double* sd) {
  const Eigen::Index d = g.Zw->rows();

  Eigen::MatrixXd Xb =
      (points.middleRows(start, count).rowwise() - *g.mx).array().rowwise() /
      g.sx->array();
  Eigen::MatrixXd Xw = Xb.array().rowwise() * g.inv_ls->transpose().array();

  // Squared weighted distances, then the correlation columns.
  Eigen::VectorXd xq = Xw.rowwise().squaredNorm();
  Eigen::MatrixXd K = -2.0 * (*g.Zw * Xw.transpose());
  K.colwise() += *g.zq;
  K.rowwise() += xq.transpose();

  Eigen::VectorXi snap = Eigen::VectorXi::Constant(count, -1);
  for (Eigen::Index j = 0; j < count; ++j) {
    Eigen::Index imin = 0;
    const double dmin = K.col(j).minCoeff(&imin);
    if (dmin <= kSnapSq) snap(j) = static_cast<int>(imin);
  }
  K = (-0.5 * K.array()).exp();

  Eigen::MatrixXd A = g.L->triangularView<Eigen::Lower>().solve(K);
  Eigen::VectorXd mval = A.transpose() * *g.rt;
  Eigen::VectorXd q = A.colwise().squaredNorm();
  Eigen::VectorXd h =
      Eigen::VectorXd::Ones(count) - (A.transpose() * *g.u);

  for (Eigen::Index j = 0; j < count; ++j) {
    if (snap(j) >= 0) {
      mean[start + j] = (*g.y_raw)(snap(j));
      sd[start + j] = 0.0;
      continue;
    }
    double var = g.s2 * (1.0 - q(j) + h(j) * h(j) / g.one);
    if (var < 0.0) var = 0.0;
    mean[start + j] = g.my + g.sy * (g.mu + mval(j));
    sd[start + j] = g.sy * std::sqrt(var);
  }
}

void predict_driver(const GpSurrogate& gp,
                    const Eigen::Ref<const Eigen::MatrixXd>& points,
                    Eigen::VectorXd& mean, Eigen::VectorXd& sd, bool parallel) {
  const Eigen::Index n = points.rows();
  mean.resize(n);
  sd.resize(n);
  if (n == 0) return;
  if (points.cols() != gp.dimension()) {
    throw DimensionMismatch("gp_predict_batch: point dimension mismatch");
  }

  const GpSurrogate::View g = gp.view();
  if (g.degenerate) {
    mean.setConstant(g.const_value);
    sd.setZero();
    return;
  }

  const Eigen::Index blocks = (n + kBlock - 1) / kBlock;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index start = b * kBlock;
    const Eigen::Index count = std::min(kBlock, n - start);
    predict_block(g, points, start, count, mean.data(), sd.data());
  }
#ifndef _OPENMP
  (void)parallel;
#endif
}

}  // namespace

void gp_predict_batch(const GpSurrogate& gp,
                      const Eigen::Ref<const Eigen::MatrixXd>& points,
                      Eigen::VectorXd& mean, Eigen::VectorXd& sd,
                      bool parallel) {
  predict_driver(gp, points, mean, sd, parallel);
}

void gp_predict_batch_serial(const GpSurrogate& gp,
                             const Eigen::Ref<const Eigen::MatrixXd>& points,
                             Eigen::VectorXd& mean, Eigen::VectorXd& sd) {
  predict_driver(gp, points, mean, sd, false);
}

void boucwen_batch(const BoucWenFrame& frame,
                   const Eigen::Ref<const Eigen::MatrixXd>& amplitudes,
                   double dt, Eigen::VectorXd& out, bool parallel) {
  const Eigen::Index n = amplitudes.rows();
  out.resize(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = bouc_wen_drift(amplitudes.row(i).transpose(), frame, dt);
  }
#ifndef _OPENMP
  (void)parallel;
#endif
}

void boucwen_batch_serial(const BoucWenFrame& frame,
                          const Eigen::Ref<const Eigen::MatrixXd>& amplitudes,
                          double dt, Eigen::VectorXd& out) {
  boucwen_batch(frame, amplitudes, dt, out, false);
}

}  // namespace algp::kernels
