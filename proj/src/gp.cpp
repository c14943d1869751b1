#include "algp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "algp/kernels.hpp"
#include "algp/rng.hpp"

namespace algp {

namespace {

constexpr double kLogLsLo = -4.605170185988091;  // log(1e-2)
constexpr double kLogLsHi = 4.605170185988091;   // log(1e2)
constexpr double kVarLo = 1e-6;
constexpr double kVarHi = 1e6;

struct Standardized {
  Eigen::MatrixXd Z;
  Eigen::VectorXd ys;
  Eigen::RowVectorXd mx, sx;
  double my = 0.0, sy = 1.0;
};

Standardized standardize(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Standardized s;
  const auto d = X.rows();
  s.mx = X.colwise().mean();
  Eigen::MatrixXd centered = X.rowwise() - s.mx;
  s.sx = (centered.array().square().colwise().sum() / double(d)).sqrt();
  for (Eigen::Index j = 0; j < s.sx.size(); ++j) {
    if (s.sx(j) <= 0.0) s.sx(j) = 1.0;
  }
  s.Z = centered.array().rowwise() / s.sx.array();
  s.my = y.mean();
  s.sy = std::sqrt((y.array() - s.my).square().sum() / double(d));
  if (s.sy <= 0.0) s.sy = 1.0;
  s.ys = (y.array() - s.my) / s.sy;
  return s;
}

// Correlation matrix of the weighted inputs Zw (rows), unit diagonal.
Eigen::MatrixXd correlation(const Eigen::MatrixXd& Zw) {
  const auto d = Zw.rows();
  Eigen::VectorXd sq = Zw.rowwise().squaredNorm();
  Eigen::MatrixXd R = -2.0 * (Zw * Zw.transpose());
  R.colwise() += sq;
  R.rowwise() += sq.transpose();
  R = (-0.5 * R.array()).exp();
  R.diagonal().setOnes();
  return R;
}

struct Factorization {
  bool ok = false;
  // The profiled process variance lies inside its bound and the correlation
  // matrix is numerically well conditioned. Candidates violating either are
  // rejected during optimization (the flat-kernel limit otherwise drives the
  // likelihood down a spurious ill-conditioned direction).
  bool feasible = false;
  double nugget = 0.0;
  Eigen::MatrixXd L;
  Eigen::VectorXd u, rt;
  double one = 0.0, mu = 0.0, s2 = 1.0;
  double nll = std::numeric_limits<double>::infinity();
};

// Cholesky with the nugget escalation ladder, then the generalized
// least-squares trend and concentrated likelihood.
Factorization factorize(const Eigen::MatrixXd& R, const Eigen::VectorXd& ys) {
  const auto d = R.rows();
  Factorization f;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (double nug = 1e-10; nug <= 1.000001e-4; nug *= 10.0) {
    Eigen::MatrixXd Rn = R;
    Rn.diagonal().array() += nug;
    llt.compute(Rn);
    if (llt.info() == Eigen::Success) {
      f.ok = true;
      f.nugget = nug;
      break;
    }
  }
  if (!f.ok) return f;

  f.L = llt.matrixL();
  const auto L = f.L.triangularView<Eigen::Lower>();
  f.u = L.solve(Eigen::VectorXd::Ones(d));
  Eigen::VectorXd w = L.solve(ys);
  f.one = f.u.squaredNorm();
  if (!(f.one > 0.0)) {
    f.ok = false;
    return f;
  }
  f.mu = f.u.dot(w) / f.one;
  f.rt = w - f.mu * f.u;
  const double s2_raw = f.rt.squaredNorm() / double(d);
  f.s2 = std::clamp(s2_raw, kVarLo, kVarHi);
  double logdet = 0.0;
  double dmin = f.L(0, 0), dmax = f.L(0, 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    logdet += std::log(f.L(i, i));
    dmin = std::min(dmin, f.L(i, i));
    dmax = std::max(dmax, f.L(i, i));
  }
  const double rcond = (dmin / dmax) * (dmin / dmax);
  f.feasible = s2_raw >= kVarLo && s2_raw <= kVarHi && rcond > 1e-14;
  f.nll = 0.5 * double(d) * std::log(f.s2) + logdet;
  return f;
}

double objective(const Eigen::MatrixXd& Z, const Eigen::VectorXd& ys,
                 const Eigen::VectorXd& log_ls) {
  Eigen::VectorXd inv_ls = (-log_ls.array()).exp();
  Eigen::MatrixXd Zw = Z.array().rowwise() * inv_ls.transpose().array();
  Factorization f = factorize(correlation(Zw), ys);
  return f.ok && f.feasible ? f.nll : std::numeric_limits<double>::infinity();
}

Eigen::VectorXd clamp_box(Eigen::VectorXd x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x(i) = std::clamp(x(i), kLogLsLo, kLogLsHi);
  }
  return x;
}

// Nelder-Mead on the box of log length-scales; proposals are projected back
// into the box.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x0, int max_evals,
                            double* best_val) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(n + 1);
  std::vector<double> vals(n + 1);
  int evals = 0;

  pts[0] = clamp_box(x0);
  vals[0] = f(pts[0]);
  ++evals;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd p = pts[0];
    p(j) += (p(j) + 0.7 <= kLogLsHi) ? 0.7 : -0.7;
    pts[j + 1] = clamp_box(p);
    vals[j + 1] = f(pts[j + 1]);
    ++evals;
  }

  std::vector<int> idx(n + 1);
  while (evals < max_evals) {
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = idx[0], worst = idx[n], second = idx[n - 1];
    if (vals[worst] - vals[best] < 1e-10 * (1.0 + std::fabs(vals[best]))) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= double(n);

    Eigen::VectorXd xr = clamp_box(centroid + (centroid - pts[worst]));
    double fr = f(xr);
    ++evals;
    if (fr < vals[idx[0]]) {
      Eigen::VectorXd xe = clamp_box(centroid + 2.0 * (centroid - pts[worst]));
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      Eigen::VectorXd xc = clamp_box(centroid + 0.5 * (pts[worst] - centroid));
      double fc = f(xc);
      ++evals;
      if (fc < vals[worst]) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          const int k = idx[i];
          pts[k] = clamp_box(pts[best] + 0.5 * (pts[k] - pts[best]));
          vals[k] = f(pts[k]);
          ++evals;
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  if (best_val) *best_val = vals[best];
  return pts[best];
}

}  // namespace

DesignSet::DesignSet(Eigen::MatrixXd inputs, Eigen::VectorXd outputs)
    : X_(std::move(inputs)), y_(std::move(outputs)) {
  if (X_.rows() != y_.size()) {
    throw DimensionMismatch("DesignSet: input/output count mismatch");
  }
  if (X_.rows() < 2 || X_.cols() < 1) {
    throw DimensionMismatch("DesignSet: need at least 2 points of dimension >= 1");
  }
  // Pairwise-distinct check under the design's own standardization.
  Standardized s = standardize(X_, y_);
  for (Eigen::Index i = 0; i < s.Z.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < s.Z.rows(); ++j) {
      if ((s.Z.row(i) - s.Z.row(j)).norm() <= 1e-10) {
        throw DuplicateInput("DesignSet: duplicate inputs");
      }
    }
  }
}

bool DesignSet::near_duplicate(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != X_.cols()) {
    throw DimensionMismatch("DesignSet::near_duplicate: dimension mismatch");
  }
  Standardized s = standardize(X_, y_);
  Eigen::RowVectorXd zx =
      (x.transpose() - s.mx).array() / s.sx.array();
  for (Eigen::Index i = 0; i < s.Z.rows(); ++i) {
    if ((s.Z.row(i) - zx).norm() <= tol) return true;
  }
  return false;
}

bool DesignSet::try_add(const Eigen::VectorXd& x, double y, double tol) {
  if (near_duplicate(x, tol)) return false;
  X_.conservativeResize(X_.rows() + 1, Eigen::NoChange);
  X_.row(X_.rows() - 1) = x.transpose();
  y_.conservativeResize(y_.size() + 1);
  y_(y_.size() - 1) = y;
  return true;
}

GpSurrogate GpSurrogate::fit(const DesignSet& design, const FitOptions& opts) {
  const Eigen::MatrixXd& X = design.inputs();
  const Eigen::VectorXd& y = design.outputs();
  const int n = design.dimension();

  GpSurrogate gp;
  gp.y_raw_ = y;

  const double spread = y.maxCoeff() - y.minCoeff();
  if (spread <= 1e-14 * std::max(1.0, y.cwiseAbs().maxCoeff())) {
    // All outputs equal: the surrogate is the constant function.
    Standardized s0 = standardize(X, y);
    gp.degenerate_ = true;
    gp.const_value_ = y(0);
    gp.mx_ = s0.mx;
    gp.sx_ = s0.sx;
    gp.my_ = y(0);
    gp.sy_ = 1.0;
    gp.s2_ = 0.0;
    gp.log_ls_ = Eigen::VectorXd::Zero(n);
    gp.inv_ls_ = Eigen::VectorXd::Ones(n);
    return gp;
  }

  Standardized s = standardize(X, y);
  gp.mx_ = s.mx;
  gp.sx_ = s.sx;
  gp.my_ = s.my;
  gp.sy_ = s.sy;

  Eigen::VectorXd best_ls;
  if (!opts.optimize) {
    if (opts.fixed_log_ls.size() != n) {
      throw ConfigError("GpSurrogate::fit: fixed_log_ls has wrong dimension");
    }
    best_ls = clamp_box(opts.fixed_log_ls);
  } else {
    auto obj = [&](const Eigen::VectorXd& ls) { return objective(s.Z, s.ys, ls); };
    std::vector<Eigen::VectorXd> starts;
    if (opts.warm_start && opts.warm_start->size() == n) {
      starts.push_back(clamp_box(*opts.warm_start));
    }
    starts.push_back(Eigen::VectorXd::Zero(n));
    Rng rng(opts.seed);
    while (static_cast<int>(starts.size()) < std::max(1, opts.multistarts)) {
      Eigen::VectorXd r(n);
      for (int j = 0; j < n; ++j) {
        r(j) = kLogLsLo + rng.uniform01() * (kLogLsHi - kLogLsLo);
      }
      starts.push_back(r);
    }
    double best_val = std::numeric_limits<double>::infinity();
    for (const Eigen::VectorXd& st : starts) {
      double val = 0.0;
      Eigen::VectorXd ls = nelder_mead(obj, st, opts.max_evals_per_start, &val);
      if (val < best_val) {
        best_val = val;
        best_ls = ls;
      }
    }
    if (!best_ls.size()) best_ls = Eigen::VectorXd::Zero(n);
  }

  gp.log_ls_ = best_ls;
  gp.inv_ls_ = (-best_ls.array()).exp();
  gp.Zw_ = s.Z.array().rowwise() * gp.inv_ls_.transpose().array();
  Factorization f = factorize(correlation(gp.Zw_), s.ys);
  if (!f.ok) {
    throw SingularCovariance(
        "GpSurrogate::fit: covariance not positive definite at maximum nugget");
  }
  gp.zq_ = gp.Zw_.rowwise().squaredNorm();
  gp.L_ = std::move(f.L);
  gp.u_ = std::move(f.u);
  gp.rt_ = std::move(f.rt);
  gp.one_ = f.one;
  gp.mu_ = f.mu;
  gp.s2_ = f.s2;
  gp.nugget_ = f.nugget;
  return gp;
}

GpSurrogate::View GpSurrogate::view() const {
  View v;
  v.Zw = &Zw_;
  v.zq = &zq_;
  v.L = &L_;
  v.u = &u_;
  v.rt = &rt_;
  v.y_raw = &y_raw_;
  v.mx = &mx_;
  v.sx = &sx_;
  v.inv_ls = &inv_ls_;
  v.mu = mu_;
  v.s2 = s2_;
  v.one = one_;
  v.my = my_;
  v.sy = sy_;
  v.degenerate = degenerate_;
  v.const_value = const_value_;
  return v;
}

Prediction GpSurrogate::predict_one(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd P = x.transpose();
  Eigen::VectorXd m(1), s(1);
  kernels::gp_predict_batch_serial(*this, P, m, s);
  return Prediction{m(0), s(0)};
}

std::vector<Prediction> GpSurrogate::predict(const Eigen::MatrixXd& points) const {
  Eigen::VectorXd m, s;
  kernels::gp_predict_batch_serial(*this, points, m, s);
  std::vector<Prediction> out(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    out[i] = Prediction{m(i), s(i)};
  }
  return out;
}

void GpSurrogate::three_fold_predict(const Eigen::MatrixXd& points, double kbar,
                                     Eigen::VectorXd& upper, Eigen::VectorXd& mid,
                                     Eigen::VectorXd& lower) const {
  if (!(kbar > 0.0)) {
    throw ConfigError("three_fold_predict: band factor must be positive");
  }
  Eigen::VectorXd m, s;
  kernels::gp_predict_batch(*this, points, m, s, true);
  upper = m - kbar * s;
  mid = m;
  lower = m + kbar * s;
}

}  // namespace algp
