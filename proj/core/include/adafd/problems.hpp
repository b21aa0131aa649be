#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

namespace adafd {

/// Univariate test function with analytic derivatives up to order 7.
/// `scale` is a characteristic frequency used to size finite-difference
/// consistency checks (h ~ 1e-4 / scale).
struct UnivariateProblem {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double, int)> derivative;  // order 0..7
  double scale = 1.0;
  std::string doc;
};

const std::vector<UnivariateProblem>& univariate_registry();
const UnivariateProblem& univariate(const std::string& name);  // UnknownName

UnivariateProblem parametric_sin(double a, double b);     // a sin(b t)
UnivariateProblem parametric_expm1(double a, double b);   // a (e^{b t} - 1)
UnivariateProblem polynomial_problem(std::vector<double> coeffs);  // sum c_i t^i

/// Unconstrained test problem with analytic gradient and Hessian diagonal.
struct MultivariateProblem {
  std::string name;
  int dim = 0;
  std::function<double(const Eigen::VectorXd&)> eval;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> hessian_diag;
  Eigen::VectorXd x0;
  double phi_star = 0;
  std::string doc;  // formula, start point, optimum
};

std::vector<std::string> multivariate_names();

/// dim = 0 selects the problem's standard dimension. Fixed-dimension
/// problems reject other sizes. Throws UnknownName.
MultivariateProblem multivariate(const std::string& name, int dim = 0);

}  // namespace adafd
