#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "adafd/noisy.hpp"
#include "adafd/problems.hpp"
#include "adafd/scheme.hpp"

namespace adafd {

enum class Strategy { Fixed, MoreWild, Adaptive, Analytic };
enum class GradScheme { Forward, Central };

Strategy strategy_from_string(const std::string& s);
GradScheme grad_scheme_from_string(const std::string& s);
std::string to_string(Strategy s);
std::string to_string(GradScheme s);

struct LBFGSConfig {
  int memory = 10;
  double c1 = 1e-4;
  double c2 = 0.9;
  int no_progress_window = 5;
  long long eval_budget = 100000;
  Strategy strategy = Strategy::Adaptive;
  GradScheme scheme = GradScheme::Forward;
  bool warm_start = true;
  int search_max_iter = 20;  // per-coordinate interval search cap
  int max_line_trials = 20;
  double gtol = 0.0;  // estimated-gradient norm stop; 0 disables
};

enum class RunStatus { NoProgress, BudgetExhausted, LineSearchFailure, GradientTolerance };
std::string to_string(RunStatus s);

struct IterateRecord {
  int k = 0;
  double true_gap = 0;   // phi(x_k) - phi*, instrumentation only
  long long evals = 0;   // oracle counter at record time
  double step = 0;
};

struct OptRun {
  std::vector<IterateRecord> iterates;
  Eigen::VectorXd final_x;
  RunStatus status = RunStatus::NoProgress;
  double final_true_gap = 0;
  long long evals = 0;
  int iterations = 0;
};

struct GradientEstimate {
  Eigen::VectorXd g;
  Eigen::VectorXd intervals;  // per-coordinate h_i (empty for Analytic)
  double eps_g = 0;
  long long new_evals = 0;
};

/// eps_g = 2 sqrt(sum_i (||w||_1 eps_f / h_i^d)^2): twice the aggregate
/// measurement bound. At a balanced interval truncation is about equal to
/// measurement, so this caps the total error estimate.
double gradient_error_from_intervals(const Scheme& scheme, const Eigen::VectorXd& intervals,
                                     double eps_f);

/// Stateful per-run gradient machinery: holds the Fixed scales computed at
/// x0 and the warm-started per-coordinate intervals for Adaptive.
class GradientEstimator {
public:
  GradientEstimator(const MultivariateProblem& problem, const LBFGSConfig& config,
                    double eps_f);

  GradientEstimate estimate(NoisyMultivariate& oracle, const Eigen::VectorXd& x);

  double fixed_L2() const { return L2_; }
  double fixed_L3() const { return L3_; }

private:
  const MultivariateProblem* problem_;
  LBFGSConfig cfg_;
  double eps_f_;
  double eps_eff_;  // eps_f with a machine-scale floor for Adaptive ratios
  double L2_ = 0, L3_ = 0;
  Eigen::VectorXd warm_h_;
};

/// One-shot convenience matching the per-call contract.
GradientEstimate estimate_gradient(NoisyMultivariate& oracle, const MultivariateProblem& problem,
                                   const Eigen::VectorXd& x, Strategy strategy, GradScheme scheme,
                                   double eps_f);

struct LineSearchResult {
  double alpha = 0;
  bool accepted = false;        // Armijo (and Wolfe where checked) held
  bool simple_decrease = false; // some trial strictly decreased f
  double f_alpha = 0;
  int trials = 0;
  long long new_evals = 0;
};

/// Relaxed Armijo-Wolfe search: alpha_0 = 1, upper bracket on Armijo
/// failure, lower bracket on Wolfe failure, bisect once both exist. The
/// Armijo test is relaxed by 2 eps_f from the second trial on when the
/// gradient is reliable (g'p < -eps_g ||p||); otherwise only strict decrease
/// is accepted. Wolfe derivatives come from forward differences along p with
/// the interval chosen by the forward search on the directional slice.
LineSearchResult line_search(NoisyMultivariate& oracle, const MultivariateProblem& problem,
                             const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                             const Eigen::VectorXd& g, double f_x, double eps_g,
                             const LBFGSConfig& config);

/// L-BFGS with finite-difference gradients; stops when the best noisy
/// objective has not strictly decreased for no_progress_window consecutive
/// iterations, the evaluation budget runs out, or no decreasing step exists.
OptRun minimize(const MultivariateProblem& problem, double eps_f, NoiseKind kind,
                std::uint64_t seed, const LBFGSConfig& config);

}  // namespace adafd
