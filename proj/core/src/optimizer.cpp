#include "adafd/optimizer.hpp"

#include <cmath>
#include <deque>
#include <limits>

#include "adafd/baselines.hpp"
#include "adafd/errors.hpp"
#include "adafd/interval_search.hpp"

namespace adafd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWarmClampLo = 1e-30;
constexpr double kWarmClampHi = 1e30;

/// Reports a floored noise level on top of another function, so Adaptive
/// searches stay defined when the true eps_f is zero.
class NoiseLevelOverride final : public NoisyFunction {
public:
  NoiseLevelOverride(NoisyFunction& base, double level) : base_(&base), level_(level) {}
  double value(double t) override { return base_->value(t); }
  double noiseless(double t) const override { return base_->noiseless(t); }
  double noise_level() const override { return level_; }
  std::uint64_t eval_count() const override { return base_->eval_count(); }
  std::uint64_t call_count() const override { return base_->call_count(); }

private:
  NoisyFunction* base_;
  double level_;
};

double clamp_warm(double h) {
  if (!std::isfinite(h) || h <= 0) return 0;
  return std::min(std::max(h, kWarmClampLo), kWarmClampHi);
}

const Scheme& grad_scheme(GradScheme s) {
  return builtin_scheme(s == GradScheme::Forward ? "FD" : "CD");
}

const TestingRatio& central_ratio() {
  static const TestingRatio r = generate_ratio(builtin_scheme("CD"), Rational(3));
  return r;
}

}  // namespace

Strategy strategy_from_string(const std::string& s) {
  if (s == "fixed") return Strategy::Fixed;
  if (s == "mw") return Strategy::MoreWild;
  if (s == "adaptive") return Strategy::Adaptive;
  if (s == "analytic") return Strategy::Analytic;
  throw UnknownName("unknown strategy '" + s + "'");
}

GradScheme grad_scheme_from_string(const std::string& s) {
  if (s == "fd") return GradScheme::Forward;
  if (s == "cd") return GradScheme::Central;
  throw UnknownName("unknown gradient scheme '" + s + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Fixed: return "fixed";
    case Strategy::MoreWild: return "mw";
    case Strategy::Adaptive: return "adaptive";
    case Strategy::Analytic: return "analytic";
  }
  return "?";
}

std::string to_string(GradScheme s) { return s == GradScheme::Forward ? "fd" : "cd"; }

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::NoProgress: return "NoProgress";
    case RunStatus::BudgetExhausted: return "BudgetExhausted";
    case RunStatus::LineSearchFailure: return "LineSearchFailure";
    case RunStatus::GradientTolerance: return "GradientTolerance";
  }
  return "?";
}

double gradient_error_from_intervals(const Scheme& scheme, const Eigen::VectorXd& intervals,
                                     double eps_f) {
  const double w1 = scheme.norm1();
  double acc = 0;
  for (Eigen::Index i = 0; i < intervals.size(); ++i) {
    const double m = w1 * eps_f / std::pow(intervals[i], scheme.d);
    acc += m * m;
  }
  return 2.0 * std::sqrt(acc);
}

GradientEstimator::GradientEstimator(const MultivariateProblem& problem,
                                     const LBFGSConfig& config, double eps_f)
    : problem_(&problem), cfg_(config), eps_f_(eps_f) {
  eps_eff_ = eps_f_;
  if (cfg_.strategy == Strategy::Fixed) {
    if (cfg_.scheme == GradScheme::Forward)
      L2_ = hessian_diag_scale(problem, problem.x0);
    else
      L3_ = third_derivative_scale(problem, problem.x0);
  }
  if (cfg_.strategy == Strategy::Adaptive && eps_f_ == 0.0) {
    const double f0 = problem.eval(problem.x0);
    eps_eff_ = 1e-16 * std::max(1.0, std::fabs(f0));
  }
  warm_h_ = Eigen::VectorXd::Zero(problem.dim);
}

GradientEstimate GradientEstimator::estimate(NoisyMultivariate& oracle,
                                             const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const std::uint64_t evals0 = oracle.eval_count();
  GradientEstimate out;
  out.g = Eigen::VectorXd::Zero(n);

  if (cfg_.strategy == Strategy::Analytic) {
    out.g = problem_->gradient(x);
    out.eps_g = 0;
    return out;
  }

  out.intervals = Eigen::VectorXd::Zero(n);
  const Scheme& scheme = grad_scheme(cfg_.scheme);
  const double sqrt_epsM = std::sqrt(std::numeric_limits<double>::epsilon());
  const double cbrt_epsM = std::cbrt(std::numeric_limits<double>::epsilon());

  Eigen::VectorXd mw_L2;
  if (cfg_.strategy == Strategy::MoreWild) {
    if (cfg_.scheme != GradScheme::Forward)
      throw Error("More-Wild intervals only apply to forward differences");
    mw_L2 = Eigen::VectorXd::Zero(n);
  }

  for (int i = 0; i < n; ++i) {
    Slice slice = coordinate_slice(oracle, x, i);
    double h = 0;
    switch (cfg_.strategy) {
      case Strategy::Fixed:
        if (eps_f_ > 0) {
          h = cfg_.scheme == GradScheme::Forward ? fixed_forward_interval(L2_, eps_f_)
                                                 : fixed_central_interval(L3_, eps_f_);
        } else {
          // noiseless fallback: classic machine-epsilon sizing
          const double s = std::max(1.0, std::fabs(x[i]));
          h = cfg_.scheme == GradScheme::Forward ? s * sqrt_epsM : s * cbrt_epsM;
        }
        break;
      case Strategy::MoreWild: {
        const MWResult mw = more_wild(slice, 0.0);
        mw_L2[i] = std::max(0.1, mw.mu.value_or(0.1));
        h = 2.0 * std::sqrt(eps_f_ / mw_L2[i]);
        break;
      }
      case Strategy::Adaptive: {
        NoiseLevelOverride probe(slice, eps_eff_);
        const double warm = cfg_.warm_start ? clamp_warm(warm_h_[i]) : 0;
        try {
          SearchResult sr;
          if (cfg_.scheme == GradScheme::Forward) {
            SearchConfig sc;
            sc.h0 = warm > 0 ? warm : 2.0 / std::sqrt(3.0) * std::sqrt(eps_eff_);
            sc.scale_eta = 4.0;
            sc.bounds = select_bounds(3.0);
            sc.max_iter = cfg_.search_max_iter;
            sr = estimate_interval(probe, 0.0, forward_ratio(), sc);
          } else {
            SearchConfig sc = default_config(central_ratio(), eps_eff_);
            if (warm > 0) sc.h0 = warm;
            sc.max_iter = cfg_.search_max_iter;
            sr = estimate_interval(probe, 0.0, central_ratio(), sc);
          }
          h = sr.h_dagger;
        } catch (const NonFiniteFunctionValue&) {
          h = warm > 0 ? warm
                       : (cfg_.scheme == GradScheme::Forward
                              ? 2.0 / std::sqrt(3.0) * std::sqrt(eps_eff_)
                              : default_h0(central_ratio(), eps_eff_));
        }
        warm_h_[i] = h;
        break;
      }
      case Strategy::Analytic:
        break;
    }

    out.intervals[i] = h;
    try {
      out.g[i] = finite_difference_at(slice, 0.0, scheme, h).value;
    } catch (const NonFiniteFunctionValue&) {
      out.g[i] = 0.0;  // treat as no usable signal along this coordinate
    }
  }

  switch (cfg_.strategy) {
    case Strategy::Fixed:
      out.eps_g = eps_f_ > 0 ? (cfg_.scheme == GradScheme::Forward
                                    ? fixed_gradient_error(n, L2_, eps_f_)
                                    : gradient_error_from_intervals(scheme, out.intervals, eps_f_))
                             : 0.0;
      break;
    case Strategy::MoreWild:
      out.eps_g = mw_gradient_error(mw_L2, eps_f_);
      break;
    case Strategy::Adaptive:
      out.eps_g = gradient_error_from_intervals(scheme, out.intervals, eps_eff_);
      break;
    case Strategy::Analytic:
      break;
  }

  out.new_evals = static_cast<long long>(oracle.eval_count() - evals0);
  return out;
}

GradientEstimate estimate_gradient(NoisyMultivariate& oracle, const MultivariateProblem& problem,
                                   const Eigen::VectorXd& x, Strategy strategy, GradScheme scheme,
                                   double eps_f) {
  LBFGSConfig cfg;
  cfg.strategy = strategy;
  cfg.scheme = scheme;
  GradientEstimator est(problem, cfg, eps_f);
  return est.estimate(oracle, x);
}

namespace {

/// Directional derivative of f along p at x, by forward difference with the
/// interval chosen by the forward search on the slice (warm-started within
/// one line search via warm_h).
double directional_derivative(NoisyMultivariate& oracle, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& p, double eps_f, int search_max_iter,
                              double& warm_h) {
  Slice slice = directional_slice(oracle, x, p);
  const double pnorm = p.norm();
  if (eps_f <= 0) {
    const double h = std::sqrt(std::numeric_limits<double>::epsilon()) *
                     std::max(1.0, x.norm()) / std::max(pnorm, 1e-300);
    return (slice.value(h) - slice.value(0.0)) / h;
  }
  double h = 0;
  try {
    SearchConfig sc;
    const double warm = clamp_warm(warm_h);
    sc.h0 = warm > 0 ? warm : 2.0 / std::sqrt(3.0) * std::sqrt(eps_f) / std::max(pnorm, 1e-300);
    sc.scale_eta = 4.0;
    sc.bounds = select_bounds(3.0);
    sc.max_iter = search_max_iter;
    h = estimate_interval(slice, 0.0, forward_ratio(), sc).h_dagger;
  } catch (const NonFiniteFunctionValue&) {
    h = 2.0 * std::sqrt(eps_f) / std::max(pnorm, 1e-300);
  }
  warm_h = h;
  try {
    return finite_difference_at(slice, 0.0, builtin_scheme("FD"), h).value;
  } catch (const NonFiniteFunctionValue&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

LineSearchResult line_search(NoisyMultivariate& oracle, const MultivariateProblem& problem,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                             const Eigen::VectorXd& g, double f_x, double eps_g,
                             const LBFGSConfig& config) {
  (void)problem;
  const double eps_f = oracle.noise_level();
  const std::uint64_t evals0 = oracle.eval_count();
  const double gp = g.dot(p);
  const bool reliable = gp < -eps_g * p.norm();

  LineSearchResult res;
  double alpha = 1.0;
  double lo = 0.0, hi = kInf;
  double best_f = kInf, best_alpha = 0.0;
  bool have_simple = false;
  double simple_alpha = 0.0, simple_f = kInf;
  double warm_dir_h = 0.0;

  for (int j = 0; j < config.max_line_trials; ++j) {
    const double f_trial = oracle.value(x + alpha * p);
    ++res.trials;

    bool armijo;
    if (reliable) {
      const double relax = (j >= 1) ? 2.0 * eps_f : 0.0;
      armijo = f_trial <= f_x + config.c1 * alpha * gp + relax;
    } else {
      armijo = f_trial < f_x;
    }
    if (f_trial < f_x) {
      have_simple = true;
      if (f_trial < simple_f) {
        simple_f = f_trial;
        simple_alpha = alpha;
      }
    }

    if (armijo) {
      if (f_trial < best_f) {
        best_f = f_trial;
        best_alpha = alpha;
      }
      bool wolfe = true;
      if (reliable) {
        // curvature test along p at the trial point
        const double dd = directional_derivative(oracle, x + alpha * p, p, eps_f,
                                                 config.search_max_iter, warm_dir_h);
        wolfe = !(dd < config.c2 * gp);  // holds also when dd is unusable
      }
      if (wolfe) {
        res.alpha = alpha;
        res.accepted = true;
        res.simple_decrease = have_simple;
        res.f_alpha = f_trial;
        res.new_evals = static_cast<long long>(oracle.eval_count() - evals0);
        return res;
      }
      lo = alpha;  // step too short
      alpha = (hi < kInf) ? 0.5 * (lo + hi) : 2.0 * alpha;
    } else {
      hi = alpha;  // step too long
      alpha = (lo > 0.0) ? 0.5 * (lo + hi) : 0.5 * alpha;
    }
    if (static_cast<long long>(oracle.eval_count() - evals0) > 0 &&
        oracle.eval_count() >= static_cast<std::uint64_t>(config.eval_budget))
      break;
  }

  // Cap reached: hand back the best Armijo step if any, else the best
  // simple-decrease step, flagged unaccepted.
  if (best_alpha > 0.0) {
    res.alpha = best_alpha;
    res.accepted = true;
    res.f_alpha = best_f;
  } else if (have_simple) {
    res.alpha = simple_alpha;
    res.accepted = false;
    res.f_alpha = simple_f;
  } else {
    res.alpha = 0.0;
    res.accepted = false;
    res.f_alpha = f_x;
  }
  res.simple_decrease = have_simple;
  res.new_evals = static_cast<long long>(oracle.eval_count() - evals0);
  return res;
}

OptRun minimize(const MultivariateProblem& problem, double eps_f, NoiseKind kind,
                std::uint64_t seed, const LBFGSConfig& config) {
  const int n = problem.dim;
  NoisyMultivariate oracle(problem.eval, eps_f, seed, kind);
  GradientEstimator estimator(problem, config, eps_f);

  OptRun run;
  Eigen::VectorXd x = problem.x0;
  double f_x = oracle.value(x);
  double best_f = f_x;
  int stall = 0;

  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;  // (s, y)
  Eigen::VectorXd g_prev;
  Eigen::VectorXd s_pending;
  bool have_pending = false;

  auto record = [&](int k, double step) {
    run.iterates.push_back(IterateRecord{k, problem.eval(x) - problem.phi_star,
                                         static_cast<long long>(oracle.eval_count()), step});
  };

  run.status = RunStatus::NoProgress;
  int k = 0;
  for (;; ++k) {
    if (oracle.eval_count() >= static_cast<std::uint64_t>(config.eval_budget)) {
      run.status = RunStatus::BudgetExhausted;
      break;
    }

    GradientEstimate ge = estimator.estimate(oracle, x);
    if (have_pending) {
      Eigen::VectorXd y = ge.g - g_prev;
      const double sy = s_pending.dot(y);
      if (sy > 1e-10 * s_pending.norm() * y.norm()) {
        pairs.emplace_back(s_pending, y);
        if (static_cast<int>(pairs.size()) > config.memory) pairs.pop_front();
      }
      have_pending = false;
    }
    g_prev = ge.g;

    if (config.gtol > 0 && ge.g.norm() <= config.gtol) {
      run.status = RunStatus::GradientTolerance;
      break;
    }

    // two-loop recursion: p = -H g
    Eigen::VectorXd q = ge.g;
    std::vector<double> alpha_i(pairs.size());
    for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i) {
      const auto& [s, y] = pairs[static_cast<std::size_t>(i)];
      alpha_i[static_cast<std::size_t>(i)] = s.dot(q) / y.dot(s);
      q -= alpha_i[static_cast<std::size_t>(i)] * y;
    }
    double gamma = 1.0;
    if (!pairs.empty()) {
      const auto& [s, y] = pairs.back();
      gamma = s.dot(y) / y.dot(y);
    }
    Eigen::VectorXd r = gamma * q;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [s, y] = pairs[i];
      const double beta = y.dot(r) / y.dot(s);
      r += (alpha_i[i] - beta) * s;
    }
    Eigen::VectorXd p = -r;
    if (!(ge.g.dot(p) < 0) || !p.allFinite()) p = -ge.g;  // descent safeguard

    if (oracle.eval_count() >= static_cast<std::uint64_t>(config.eval_budget)) {
      run.status = RunStatus::BudgetExhausted;
      break;
    }

    const LineSearchResult ls =
        line_search(oracle, problem, x, p, ge.g, f_x, ge.eps_g, config);

    if (ls.alpha == 0.0) {
      run.status = RunStatus::LineSearchFailure;
      break;
    }

    s_pending = ls.alpha * p;
    x = x + s_pending;
    have_pending = true;
    f_x = ls.f_alpha;
    record(k, ls.alpha);

    if (f_x < best_f) {
      best_f = f_x;
      stall = 0;
    } else if (++stall >= config.no_progress_window) {
      run.status = RunStatus::NoProgress;
      ++k;
      break;
    }

    oracle.clear_cache();  // reuse is within one iterate's work
  }

  run.final_x = x;
  run.iterations = k;
  run.evals = static_cast<long long>(oracle.eval_count());
  run.final_true_gap = problem.eval(x) - problem.phi_star;
  return run;
}

}  // namespace adafd
