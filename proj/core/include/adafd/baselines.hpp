#pragma once

#include <optional>

#include "adafd/noisy.hpp"
#include "adafd/problems.hpp"

namespace adafd {

/// Outcome of the More-Wild second-derivative heuristic. Failure is a value
/// (mu absent), matching how result tables report "--" entries.
struct MWResult {
  std::optional<double> mu;            // estimate of |phi''(t)|
  int trials = 0;                      // 1, 2, or 3
  std::optional<double> h_forward;     // 2 sqrt(eps_f / max{0.1, mu})
  long long new_evals = 0;
};

/// Three-step More-Wild procedure: h~_1 = eps_f^{1/4}, accept mu_1 if
///   |f(t+h~) - 2 f(t) + f(t-h~)| >= tau1 eps_f  and
///   |f(t +- h~) - f(t)| <= tau2 max{|f(t)|, |f(t +- h~)|};
/// otherwise h~_2 = (eps_f/mu_1)^{1/4} and the same test, and finally the
/// fallback |mu_1 - mu_2| <= mu_2 / 2. Anything else is Failure.
MWResult more_wild(NoisyFunction& f, double t, double tau1 = 100.0, double tau2 = 0.1);

/// h = 2 sqrt(eps_f / max{0.1, L2})
double fixed_forward_interval(double L2, double eps_f);
/// h = (3 eps_f / max{0.1, L3})^{1/3}
double fixed_central_interval(double L3, double eps_f);

/// L2 = max{0.1, RMS of the analytic Hessian diagonal at x0}.
double hessian_diag_scale(const MultivariateProblem& problem, const Eigen::VectorXd& x0);

/// L3 = max{0.1, RMS of forward differences of the Hessian diagonal with
/// step h~_i = max{1, |x0_i|} sqrt(eps_M)} — noiseless differences of the
/// true Hessian, a synthetic benchmarking aid.
double third_derivative_scale(const MultivariateProblem& problem, const Eigen::VectorXd& x0);

/// eps_g = 2 sqrt(n L2 eps_f) for a global interval.
double fixed_gradient_error(int n, double L2, double eps_f);
/// eps_g = 2 sqrt(eps_f sum_i L2_i) for per-coordinate More-Wild scales.
double mw_gradient_error(const Eigen::VectorXd& L2_per_coord, double eps_f);

}  // namespace adafd
