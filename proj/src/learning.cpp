#include "algp/learning.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "algp/gp.hpp"
#include "algp/kernels.hpp"
#include "algp/normal.hpp"
#include "algp/rng.hpp"

namespace algp {

namespace {

constexpr int kGridNodes = 1001;  // integration/scan grid over [ymin, ymax]

double grid_y(const AlConfig& cfg, int i) {
  return cfg.ymin + (cfg.ymax - cfg.ymin) * double(i) / double(kGridNodes - 1);
}

}  // namespace

void AlConfig::validate() const {
  if (!(ymin < ymax)) throw ConfigError("AlConfig: ymin must be below ymax");
  if (!(eps_bar > 0.0)) throw ConfigError("AlConfig: eps_bar must be positive");
  if (!(kbar > 0.0)) throw ConfigError("AlConfig: kbar must be positive");
  if (pool_size < 1000) throw ConfigError("AlConfig: pool size below 1000");
  if (init_size < 2) throw ConfigError("AlConfig: initial design below 2");
  if (budget < 0) throw ConfigError("AlConfig: negative budget");
  if (mode == LearnMode::Conventional && threshold_count < 2) {
    throw ConfigError("AlConfig: conventional mode needs at least 2 thresholds");
  }
}

std::string to_string(Termination t) {
  return t == Termination::Converged ? "converged" : "budget_exhausted";
}

void RunReport::validate() const {
  if (n_model_calls !=
      config.init_size + static_cast<std::int64_t>(iterations.size())) {
    throw Error("RunReport: model call count inconsistent with records");
  }
}

double pointwise_error(const ThreeFoldCdf& cdf, double y, TailMode tail,
                       double floor_p) {
  const double num = std::fabs(cdf.f_plus(y) - cdf.f_minus(y));
  const double f0 = cdf.f_mid(y);
  double den;
  switch (tail) {
    case TailMode::Both:
      den = std::min(f0, 1.0 - f0);
      break;
    case TailMode::CdfOnly:
      den = f0;
      break;
    default:
      den = 1.0 - f0;
      break;
  }
  return num / std::max(den, floor_p);
}

double global_error(const ThreeFoldCdf& cdf, const AlConfig& cfg) {
  const double floor_p = 1.0 / double(cdf.size());
  const double h = (cfg.ymax - cfg.ymin) / double(kGridNodes - 1);
  double acc = 0.0;
  for (int i = 0; i < kGridNodes; ++i) {
    const double w = (i == 0 || i == kGridNodes - 1) ? 0.5 : 1.0;
    acc += w * pointwise_error(cdf, grid_y(cfg, i), cfg.tail, floor_p);
  }
  return acc * h;
}

bool stopping_check(double w_global, const AlConfig& cfg) {
  return w_global < cfg.eps_bar * (cfg.ymax - cfg.ymin);
}

SigmaLookup SigmaLookup::build(const Eigen::VectorXd& mean,
                               const Eigen::VectorXd& sd) {
  if (mean.size() == 0) {
    throw EmptyPool("SigmaLookup: empty pool");
  }
  std::vector<std::pair<double, double>> pairs(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    pairs[i] = {mean(i), sd(i)};
  }
  std::sort(pairs.begin(), pairs.end());
  SigmaLookup lk;
  lk.mu_.resize(pairs.size());
  lk.sd_.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    lk.mu_[i] = pairs[i].first;
    lk.sd_[i] = pairs[i].second;
  }
  return lk;
}

double SigmaLookup::sigma_near(double y) const {
  const auto it = std::lower_bound(mu_.begin(), mu_.end(), y);
  if (it == mu_.begin()) return sd_.front();
  if (it == mu_.end()) return sd_.back();
  const auto i = it - mu_.begin();
  // Equidistant neighbors resolve toward the smaller predicted mean.
  return (y - mu_[i - 1] <= mu_[i] - y) ? sd_[i - 1] : sd_[i];
}

namespace {

// Shared integration core: trapezoid of w(y) against a truncated-Gaussian
// kernel centered at y_prime. w_grid holds the pointwise error on the scan grid.
double gaussian_localized(const std::vector<double>& w_grid, double y_prime,
                          double sigma, const AlConfig& cfg,
                          const ThreeFoldCdf& cdf, double floor_p) {
  const double cell = (cfg.ymax - cfg.ymin) / double(kGridNodes - 1);
  if (sigma < 2.0 * cell) {
    // Kernel narrower than the grid can resolve: fall back to the pointwise value.
    return pointwise_error(cdf, y_prime, cfg.tail, floor_p);
  }
  const double z =
      std::sqrt(2.0 * M_PI) * sigma *
      (std_normal_cdf((cfg.ymax - y_prime) / sigma) -
       std_normal_cdf((cfg.ymin - y_prime) / sigma));
  if (!(z > 0.0)) {
    return pointwise_error(cdf, y_prime, cfg.tail, floor_p);
  }
  double acc = 0.0;
  for (int i = 0; i < kGridNodes; ++i) {
    const double y = grid_y(cfg, i);
    const double d = (y - y_prime) / sigma;
    const double w = (i == 0 || i == kGridNodes - 1) ? 0.5 : 1.0;
    acc += w * w_grid[i] * std::exp(-0.5 * d * d);
  }
  return acc * cell / z;
}

std::vector<double> pointwise_grid(const ThreeFoldCdf& cdf, const AlConfig& cfg,
                                   double floor_p) {
  std::vector<double> w(kGridNodes);
  for (int i = 0; i < kGridNodes; ++i) {
    w[i] = pointwise_error(cdf, grid_y(cfg, i), cfg.tail, floor_p);
  }
  return w;
}

}  // namespace

double localized_error(const ThreeFoldCdf& cdf, double y_prime, LearnMode kernel,
                       const SigmaLookup& sigmas, const AlConfig& cfg) {
  const double floor_p = 1.0 / double(cdf.size());
  if (kernel != LearnMode::GaussianKernel) {
    return pointwise_error(cdf, y_prime, cfg.tail, floor_p);
  }
  const std::vector<double> w_grid = pointwise_grid(cdf, cfg, floor_p);
  return gaussian_localized(w_grid, y_prime, sigmas.sigma_near(y_prime), cfg,
                            cdf, floor_p);
}

double select_threshold(const ThreeFoldCdf& cdf, const SigmaLookup& sigmas,
                        const AlConfig& cfg) {
  const double floor_p = 1.0 / double(cdf.size());
  const std::vector<double> w_grid = pointwise_grid(cdf, cfg, floor_p);
  const bool gaussian = cfg.mode == LearnMode::GaussianKernel;

  auto value_at = [&](double y) {
    return gaussian
               ? gaussian_localized(w_grid, y, sigmas.sigma_near(y), cfg, cdf,
                                    floor_p)
               : pointwise_error(cdf, y, cfg.tail, floor_p);
  };

  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i < kGridNodes; ++i) {
    const double v =
        gaussian ? gaussian_localized(w_grid, grid_y(cfg, i),
                                      sigmas.sigma_near(grid_y(cfg, i)), cfg,
                                      cdf, floor_p)
                 : w_grid[i];
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  if (best_v <= 0.0) {
    return cfg.ymin;  // flat profile: tie-break toward the range start
  }

  // Golden-section refinement in the two-cell neighborhood of the best node.
  double lo = grid_y(cfg, std::max(best_i - 1, 0));
  double hi = grid_y(cfg, std::min(best_i + 1, kGridNodes - 1));
  double best_y = grid_y(cfg, best_i);

  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = value_at(c);
  double fd = value_at(d);
  for (int it = 0; it < 60 && (b - a) > 1e-12 * (cfg.ymax - cfg.ymin); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value_at(d);
    }
    const double y_cand = fc > fd ? c : d;
    const double v_cand = std::max(fc, fd);
    if (v_cand > best_v) {
      best_v = v_cand;
      best_y = y_cand;
    }
  }
  return best_y;
}

double learning_score(double mean, double sd, double y_star, double sd_floor) {
  if (sd <= sd_floor) return 0.0;
  return std_normal_cdf(-std::fabs(y_star - mean) / sd);
}

namespace {

std::int64_t select_masked(const Eigen::VectorXd& mean, const Eigen::VectorXd& sd,
                           const AlConfig& cfg, double sd_floor, double y_star,
                           bool mov, const std::vector<char>* skip,
                           bool* fallback) {
  const auto n = mean.size();
  if (n == 0) {
    throw EmptyPool("select_candidate: empty pool");
  }
  std::int64_t best_in = -1, best_any = -1;
  double v_in = -1.0, v_any = -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (skip && (*skip)[i]) continue;
    const double score =
        mov ? sd(i) : learning_score(mean(i), sd(i), y_star, sd_floor);
    const bool in_band = mean(i) >= cfg.ymin - cfg.kbar * sd(i) &&
                         mean(i) <= cfg.ymax + cfg.kbar * sd(i);
    if (score > v_any) {
      v_any = score;
      best_any = i;
    }
    if (in_band && score > v_in) {
      v_in = score;
      best_in = i;
    }
  }
  if (best_in >= 0) {
    if (fallback) *fallback = false;
    return best_in;
  }
  if (fallback) *fallback = true;
  if (best_any < 0) {
    throw EmptyPool("select_candidate: all candidates masked");
  }
  return best_any;
}

}  // namespace

std::int64_t select_candidate(const Eigen::VectorXd& mean,
                              const Eigen::VectorXd& sd, double y_star,
                              const AlConfig& cfg, double sd_floor,
                              bool* fallback) {
  return select_masked(mean, sd, cfg, sd_floor, y_star, false, nullptr, fallback);
}

std::int64_t select_candidate_mov(const Eigen::VectorXd& mean,
                                  const Eigen::VectorXd& sd,
                                  const AlConfig& cfg, bool* fallback) {
  return select_masked(mean, sd, cfg, 0.0, 0.0, true, nullptr, fallback);
}

namespace {

struct LoopState {
  DesignSet design;
  Eigen::VectorXd warm;
  bool have_warm = false;
  int fit_counter = 0;
};

GpSurrogate fit_current(LoopState& st, const AlConfig& cfg, std::uint64_t iter) {
  FitOptions fo;
  fo.seed = derive_seed(cfg.seed, Stream::Optimizer, iter);
  if (st.have_warm && st.fit_counter % 25 != 0) {
    fo.warm_start = st.warm;
    fo.multistarts = 1;
    fo.max_evals_per_start = 120;
  } else {
    fo.multistarts = 5;
    fo.max_evals_per_start = 250;
  }
  ++st.fit_counter;
  GpSurrogate gp = GpSurrogate::fit(st.design, fo);
  if (!gp.degenerate()) {
    st.warm = gp.log_length_scales();
    st.have_warm = true;
  }
  return gp;
}

// Moments of an empirical fold through the CDF integral, on an automatic
// range extended three standard deviations beyond the sample extremes.
MomentSet fold_cdf_moments(const std::vector<double>& sorted_fold) {
  const MomentSet s = sample_moments(sorted_fold);
  const double lo = sorted_fold.front() - 3.0 * s.std;
  const double hi = sorted_fold.back() + 3.0 * s.std;
  auto F = [&sorted_fold](double y) {
    const auto it =
        std::upper_bound(sorted_fold.begin(), sorted_fold.end(), y);
    return double(it - sorted_fold.begin()) / double(sorted_fold.size());
  };
  return moments_from_cdf(F, lo, hi);
}

std::int64_t pick_candidate(const Eigen::VectorXd& mean, const Eigen::VectorXd& sd,
                            double y_star, const AlConfig& cfg, double sd_floor,
                            bool mov, const DesignSet& design,
                            const CandidatePool& pool, bool* fallback) {
  std::vector<char> skip;
  const std::vector<char>* skip_ptr = nullptr;
  for (;;) {
    const std::int64_t idx =
        select_masked(mean, sd, cfg, sd_floor, y_star, mov, skip_ptr, fallback);
    if (!design.near_duplicate(pool.points.row(idx).transpose())) {
      return idx;
    }
    if (skip.empty()) {
      skip.assign(mean.size(), 0);
      skip_ptr = &skip;
    }
    skip[idx] = 1;
  }
}

void finalize_report(RunReport& rep, const ThreeFoldCdf& cdf, double w_global) {
  rep.final_cdf = cdf;
  rep.final_w = w_global;
  rep.final_moments = fold_cdf_moments(cdf.mid);
  rep.final_moments_plus = fold_cdf_moments(cdf.upper);
  rep.final_moments_minus = fold_cdf_moments(cdf.lower);
  rep.n_model_calls =
      rep.config.init_size + static_cast<std::int64_t>(rep.iterations.size());
  for (const IterationRecord& r : rep.iterations) {
    if (r.band_fallback) ++rep.band_fallbacks;
  }
}

}  // namespace

RunReport run_active_loop(const ModelFunction& model, const RandomInputSpec& spec,
                          const AlConfig& cfg, const FoldObserver& observe) {
  cfg.validate();
  spec.validate();
  if (model.dimension() != spec.dimension()) {
    throw DimensionMismatch("run_active_loop: model/input dimension mismatch");
  }
  if (cfg.mode == LearnMode::Conventional) {
    return run_conventional_baseline(model, spec, cfg, observe);
  }

  RunReport rep;
  rep.benchmark = model.name();
  rep.config = cfg;

  Eigen::MatrixXd X0 = initial_design(spec, cfg.init_size,
                                      derive_seed(cfg.seed, Stream::InitialDesign, 0));
  Eigen::VectorXd y0(cfg.init_size);
  for (int i = 0; i < cfg.init_size; ++i) {
    y0(i) = model(X0.row(i).transpose());
  }
  LoopState st{DesignSet(X0, y0), {}, false, 0};

  int added = 0;
  std::uint64_t iter = 0;
  for (;;) {
    ++iter;
    const auto t0 = std::chrono::steady_clock::now();
    GpSurrogate gp = fit_current(st, cfg, iter);
    CandidatePool pool =
        sample_pool(spec, cfg.pool_size, derive_seed(cfg.seed, Stream::Pool, iter));
    Eigen::VectorXd mean, sd;
    kernels::gp_predict_batch(gp, pool.points, mean, sd, true);
    ThreeFoldCdf cdf = make_three_fold(mean, sd, cfg.kbar);
    if (observe) observe(cdf);
    const double w_global = global_error(cdf, cfg);

    if (stopping_check(w_global, cfg)) {
      rep.termination = Termination::Converged;
      finalize_report(rep, cdf, w_global);
      return rep;
    }
    if (added >= cfg.budget) {
      rep.termination = Termination::BudgetExhausted;
      finalize_report(rep, cdf, w_global);
      return rep;
    }

    const double sd_floor = 1e-12 * gp.output_scale();
    IterationRecord rec;
    rec.iteration = static_cast<int>(iter);
    rec.w_global = w_global;

    std::int64_t idx;
    if (cfg.mode == LearnMode::MaxVariance) {
      rec.y_star = std::numeric_limits<double>::quiet_NaN();
      idx = pick_candidate(mean, sd, 0.0, cfg, sd_floor, true, st.design, pool,
                           &rec.band_fallback);
    } else {
      SigmaLookup lk = SigmaLookup::build(mean, sd);
      rec.y_star = select_threshold(cdf, lk, cfg);
      idx = pick_candidate(mean, sd, rec.y_star, cfg, sd_floor, false, st.design,
                           pool, &rec.band_fallback);
    }

    rec.x_star = pool.points.row(idx).transpose();
    rec.model_value = model(rec.x_star);
    rec.moments_plus = sample_moments(cdf.upper);
    rec.moments_mid = sample_moments(cdf.mid);
    rec.moments_minus = sample_moments(cdf.lower);

    st.design.try_add(rec.x_star, rec.model_value);
    ++added;

    rec.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.iterations.push_back(std::move(rec));
  }
}

RunReport run_conventional_baseline(const ModelFunction& model,
                                    const RandomInputSpec& spec,
                                    const AlConfig& cfg,
                                    const FoldObserver& observe) {
  cfg.validate();
  spec.validate();
  if (model.dimension() != spec.dimension()) {
    throw DimensionMismatch("run_conventional_baseline: dimension mismatch");
  }

  RunReport rep;
  rep.benchmark = model.name();
  rep.config = cfg;

  Eigen::MatrixXd X0 = initial_design(spec, cfg.init_size,
                                      derive_seed(cfg.seed, Stream::InitialDesign, 0));
  Eigen::VectorXd y0(cfg.init_size);
  for (int i = 0; i < cfg.init_size; ++i) {
    y0(i) = model(X0.row(i).transpose());
  }
  LoopState st{DesignSet(X0, y0), {}, false, 0};

  // Thresholds sweep from the midpoint outward, alternating toward both tails.
  const int T = cfg.threshold_count;
  std::vector<int> order;
  order.reserve(T);
  const int center = (T - 1) / 2;
  order.push_back(center);
  for (int off = 1; static_cast<int>(order.size()) < T; ++off) {
    if (center + off < T) order.push_back(center + off);
    if (center - off >= 0) order.push_back(center - off);
  }

  int added = 0;
  std::uint64_t iter = 0;
  ThreeFoldCdf last_cdf;
  bool cdf_current = false;
  bool out_of_budget = false;

  for (int t_idx : order) {
    const double y_t =
        cfg.ymin + (cfg.ymax - cfg.ymin) * double(t_idx) / double(T - 1);
    for (;;) {
      ++iter;
      const auto t0 = std::chrono::steady_clock::now();
      GpSurrogate gp = fit_current(st, cfg, iter);
      CandidatePool pool = sample_pool(spec, cfg.pool_size,
                                       derive_seed(cfg.seed, Stream::Pool, iter));
      Eigen::VectorXd mean, sd;
      kernels::gp_predict_batch(gp, pool.points, mean, sd, true);
      last_cdf = make_three_fold(mean, sd, cfg.kbar);
      if (observe) observe(last_cdf);
      cdf_current = true;
      const double w_here =
          pointwise_error(last_cdf, y_t, cfg.tail, 1.0 / double(last_cdf.size()));
      if (w_here < cfg.eps_bar) break;
      if (added >= cfg.budget) {
        out_of_budget = true;
        break;
      }

      const double sd_floor = 1e-12 * gp.output_scale();
      IterationRecord rec;
      rec.iteration = static_cast<int>(iter);
      rec.w_global = w_here;
      rec.y_star = y_t;
      const std::int64_t idx = pick_candidate(mean, sd, y_t, cfg, sd_floor, false,
                                              st.design, pool, &rec.band_fallback);
      rec.x_star = pool.points.row(idx).transpose();
      rec.model_value = model(rec.x_star);
      rec.moments_plus = sample_moments(last_cdf.upper);
      rec.moments_mid = sample_moments(last_cdf.mid);
      rec.moments_minus = sample_moments(last_cdf.lower);
      st.design.try_add(rec.x_star, rec.model_value);
      ++added;
      cdf_current = false;
      rec.duration_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rep.iterations.push_back(std::move(rec));
    }
    if (out_of_budget) break;
  }

  if (!cdf_current) {
    ++iter;
    GpSurrogate gp = fit_current(st, cfg, iter);
    CandidatePool pool = sample_pool(spec, cfg.pool_size,
                                     derive_seed(cfg.seed, Stream::Pool, iter));
    Eigen::VectorXd mean, sd;
    kernels::gp_predict_batch(gp, pool.points, mean, sd, true);
    last_cdf = make_three_fold(mean, sd, cfg.kbar);
    if (observe) observe(last_cdf);
  }
  rep.termination =
      out_of_budget ? Termination::BudgetExhausted : Termination::Converged;
  finalize_report(rep, last_cdf, global_error(last_cdf, cfg));
  return rep;
}

}  // namespace algp
