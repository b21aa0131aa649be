#include "adafd/baselines.hpp"

#include <cmath>

#include "adafd/errors.hpp"

namespace adafd {

namespace {

struct MWTrial {
  double mu = 0;
  bool cond1 = false;
  bool cond2 = false;
};

MWTrial mw_trial(NoisyFunction& f, double t, double h, double tau1, double tau2) {
  const double eps_f = f.noise_level();
  const double fc = f.value(t);
  const double fp = f.value(t + h);
  const double fm = f.value(t - h);
  const double num = fp - 2 * fc + fm;
  MWTrial out;
  out.mu = std::fabs(num) / (h * h);
  out.cond1 = std::fabs(num) >= tau1 * eps_f;
  out.cond2 = std::fabs(fp - fc) <= tau2 * std::max(std::fabs(fc), std::fabs(fp)) &&
              std::fabs(fm - fc) <= tau2 * std::max(std::fabs(fc), std::fabs(fm));
  return out;
}

}  // namespace

MWResult more_wild(NoisyFunction& f, double t, double tau1, double tau2) {
  if (f.noise_level() <= 0.0) throw ZeroNoiseLevel("More-Wild needs eps_f > 0");
  const double eps_f = f.noise_level();
  const std::uint64_t evals0 = f.eval_count();
  MWResult res;

  const double h1 = std::pow(eps_f, 0.25);
  const MWTrial t1 = mw_trial(f, t, h1, tau1, tau2);
  if (t1.cond1 && t1.cond2) {
    res.mu = t1.mu;
    res.trials = 1;
  } else if (t1.mu > 0 && std::isfinite(t1.mu)) {
    const double h2 = std::pow(eps_f / t1.mu, 0.25);
    const MWTrial t2 = mw_trial(f, t, h2, tau1, tau2);
    if (t2.cond1 && t2.cond2) {
      res.mu = t2.mu;
      res.trials = 2;
    } else if (std::fabs(t1.mu - t2.mu) <= 0.5 * t2.mu) {
      res.mu = t2.mu;
      res.trials = 3;
    }
  }

  if (res.mu) {
    const double L2 = std::max(0.1, *res.mu);
    res.h_forward = 2.0 * std::sqrt(eps_f / L2);
  }
  res.new_evals = static_cast<long long>(f.eval_count() - evals0);
  return res;
}

double fixed_forward_interval(double L2, double eps_f) {
  return 2.0 * std::sqrt(eps_f / std::max(0.1, L2));
}

double fixed_central_interval(double L3, double eps_f) {
  return std::cbrt(3.0 * eps_f / std::max(0.1, L3));
}

double hessian_diag_scale(const MultivariateProblem& problem, const Eigen::VectorXd& x0) {
  if (!problem.hessian_diag) throw MissingAnalyticDerivatives(problem.name);
  const Eigen::VectorXd d = problem.hessian_diag(x0);
  return std::max(0.1, std::sqrt(d.squaredNorm() / d.size()));
}

double third_derivative_scale(const MultivariateProblem& problem, const Eigen::VectorXd& x0) {
  if (!problem.hessian_diag) throw MissingAnalyticDerivatives(problem.name);
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  const Eigen::VectorXd d0 = problem.hessian_diag(x0);
  double acc = 0;
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    const double h = std::max(1.0, std::fabs(x0[i])) * sqrt_eps;
    Eigen::VectorXd xp = x0;
    xp[i] += h;
    const double slope = (problem.hessian_diag(xp)[i] - d0[i]) / h;
    acc += slope * slope;
  }
  return std::max(0.1, std::sqrt(acc / x0.size()));
}

double fixed_gradient_error(int n, double L2, double eps_f) {
  return 2.0 * std::sqrt(n * L2 * eps_f);
}

double mw_gradient_error(const Eigen::VectorXd& L2_per_coord, double eps_f) {
  return 2.0 * std::sqrt(eps_f * L2_per_coord.sum());
}

}  // namespace adafd
