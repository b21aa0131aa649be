#include "adafd/problems.hpp"

#include <cmath>

#include "adafd/errors.hpp"

namespace adafd {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

UnivariateProblem make_cos() {
  UnivariateProblem p;
  p.name = "cos";
  p.eval = [](double t) { return std::cos(t); };
  p.derivative = [](double t, int k) { return std::cos(t + k * kHalfPi); };
  p.doc = "phi(t) = cos(t)";
  return p;
}

UnivariateProblem make_expm1_sq() {
  UnivariateProblem p;
  p.name = "expm1_sq";
  p.eval = [](double t) {
    const double e = std::expm1(t);
    return e * e;
  };
  // phi = e^{2t} - 2 e^t + 1; phi^{(k)} = 2^k e^{2t} - 2 e^t for k >= 1
  p.derivative = [](double t, int k) {
    if (k == 0) {
      const double e = std::expm1(t);
      return e * e;
    }
    return std::pow(2.0, k) * std::exp(2 * t) - 2 * std::exp(t);
  };
  p.scale = 2.0;
  p.doc = "phi(t) = (e^t - 1)^2";
  return p;
}

UnivariateProblem make_exp100() {
  UnivariateProblem p;
  p.name = "exp100";
  p.eval = [](double t) { return std::exp(100.0 * t); };
  p.derivative = [](double t, int k) { return std::pow(100.0, k) * std::exp(100.0 * t); };
  p.scale = 100.0;
  p.doc = "phi(t) = e^{100 t}";
  return p;
}

UnivariateProblem make_poly(std::vector<double> coeffs, std::string name, std::string doc) {
  UnivariateProblem p;
  p.name = std::move(name);
  p.doc = std::move(doc);
  auto eval_deriv = [coeffs = std::move(coeffs)](double t, int k) {
    double acc = 0.0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= k; --i) {
      double f = 1.0;
      for (int j = 0; j < k; ++j) f *= (i - j);
      acc = acc * t + coeffs[static_cast<std::size_t>(i)] * f;
    }
    return acc;
  };
  p.eval = [eval_deriv](double t) { return eval_deriv(t, 0); };
  p.derivative = eval_deriv;
  return p;
}

}  // namespace

UnivariateProblem parametric_sin(double a, double b) {
  UnivariateProblem p;
  p.name = "sin(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
  p.eval = [a, b](double t) { return a * std::sin(b * t); };
  p.derivative = [a, b](double t, int k) {
    return a * std::pow(b, k) * std::sin(b * t + k * kHalfPi);
  };
  p.scale = std::max(1.0, std::fabs(b));
  p.doc = "phi(t) = a sin(b t)";
  return p;
}

UnivariateProblem parametric_expm1(double a, double b) {
  UnivariateProblem p;
  p.name = "expm1(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
  p.eval = [a, b](double t) { return a * std::expm1(b * t); };
  p.derivative = [a, b](double t, int k) {
    if (k == 0) return a * std::expm1(b * t);
    return a * std::pow(b, k) * std::exp(b * t);
  };
  p.scale = std::max(1.0, std::fabs(b));
  p.doc = "phi(t) = a (e^{b t} - 1)";
  return p;
}

UnivariateProblem polynomial_problem(std::vector<double> coeffs) {
  return make_poly(std::move(coeffs), "polynomial", "phi(t) = sum_i c_i t^i");
}

const std::vector<UnivariateProblem>& univariate_registry() {
  static const std::vector<UnivariateProblem> reg = [] {
    std::vector<UnivariateProblem> v;
    v.push_back(make_cos());
    v.push_back(parametric_sin(1.0, 1.0));
    v.back().name = "sin";
    v.back().doc = "phi(t) = sin(t)";
    v.push_back(make_expm1_sq());
    v.push_back(make_exp100());
    v.push_back(make_poly({0.0, -10.0, 3.0, 0.0, 1.0}, "quartic",
                          "phi(t) = t^4 + 3 t^2 - 10 t, phi'(1) = 0"));
    v.push_back(make_poly({0.0, 5.0, 0.01, 10000.0}, "cubic_steep",
                          "phi(t) = 10000 t^3 + 0.01 t^2 + 5 t"));
    v.push_back(parametric_expm1(1.0, 1.0));
    v.back().name = "expm1";
    v.back().doc = "phi(t) = e^t - 1";
    return v;
  }();
  return reg;
}

const UnivariateProblem& univariate(const std::string& name) {
  for (const auto& p : univariate_registry())
    if (p.name == name) return p;
  throw UnknownName("no univariate problem named '" + name + "'");
}

namespace {

using Vec = Eigen::VectorXd;

void check_dim(const std::string& name, int dim, int fixed) {
  if (dim != 0 && dim != fixed)
    throw UnknownName(name + " has fixed dimension " + std::to_string(fixed));
}

MultivariateProblem make_arwhead(int n) {
  MultivariateProblem p;
  p.name = "ARWHEAD";
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = 0;
    for (int i = 0; i < n - 1; ++i) {
      const double t = x[i] * x[i] + x[n - 1] * x[n - 1];
      f += t * t - 4 * x[i] + 3;
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x[i] * x[i] + x[n - 1] * x[n - 1];
      g[i] += 4 * t * x[i] - 4;
      g[n - 1] += 4 * t * x[n - 1];
    }
    return g;
  };
  p.hessian_diag = [n](const Vec& x) {
    Vec d = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x[i] * x[i] + x[n - 1] * x[n - 1];
      d[i] += 4 * t + 8 * x[i] * x[i];
      d[n - 1] += 4 * t + 8 * x[n - 1] * x[n - 1];
    }
    return d;
  };
  p.x0 = Vec::Ones(n);
  p.phi_star = 0.0;
  p.doc = "sum_{i<n} (x_i^2 + x_n^2)^2 - 4 x_i + 3; x0 = ones; phi* = 0";
  return p;
}

MultivariateProblem make_tridia(int n) {
  MultivariateProblem p;
  p.name = "TRIDIA";
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = (x[0] - 1) * (x[0] - 1);
    for (int i = 1; i < n; ++i) {
      const double t = 2 * x[i] - x[i - 1];
      f += (i + 1) * t * t;
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g = Vec::Zero(n);
    g[0] = 2 * (x[0] - 1);
    for (int i = 1; i < n; ++i) {
      const double t = 2 * x[i] - x[i - 1];
      g[i] += 4 * (i + 1) * t;
      g[i - 1] -= 2 * (i + 1) * t;
    }
    return g;
  };
  p.hessian_diag = [n](const Vec&) {
    Vec d = Vec::Zero(n);
    d[0] = 2;
    for (int i = 1; i < n; ++i) {
      d[i] += 8 * (i + 1);
      d[i - 1] += 2 * (i + 1);
    }
    return d;
  };
  p.x0 = Vec::Ones(n);
  p.phi_star = 0.0;
  p.doc = "(x_1 - 1)^2 + sum_{i=2}^n i (2 x_i - x_{i-1})^2; x0 = ones; phi* = 0";
  return p;
}

MultivariateProblem make_nondia(int n) {
  MultivariateProblem p;
  p.name = "NONDIA";
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = (x[0] - 1) * (x[0] - 1);
    for (int i = 1; i < n; ++i) {
      const double t = x[0] - x[i - 1] * x[i - 1];
      f += 100 * t * t;
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g = Vec::Zero(n);
    g[0] = 2 * (x[0] - 1);
    for (int i = 1; i < n; ++i) {
      const double t = x[0] - x[i - 1] * x[i - 1];
      g[0] += 200 * t;
      g[i - 1] -= 400 * t * x[i - 1];
    }
    return g;
  };
  p.hessian_diag = [n](const Vec& x) {
    Vec d = Vec::Zero(n);
    // term i=1 couples x_1 with itself: 100 (x_1 - x_1^2)^2
    d[0] = 2 + 200 * (n - 1) - 1200 * x[0] + 1200 * x[0] * x[0];
    for (int i = 2; i < n; ++i) {
      const double t = x[0] - x[i - 1] * x[i - 1];
      d[i - 1] = -400 * t + 800 * x[i - 1] * x[i - 1];
    }
    return d;
  };
  p.x0 = -Vec::Ones(n);
  p.phi_star = 0.0;
  p.doc = "(x_1 - 1)^2 + 100 sum_{i=2}^n (x_1 - x_{i-1}^2)^2; x0 = -ones; phi* = 0";
  return p;
}

MultivariateProblem make_dqrtic(int n, std::string name) {
  MultivariateProblem p;
  p.name = std::move(name);
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = 0;
    for (int i = 0; i < n; ++i) {
      const double t = x[i] - (i + 1);
      f += t * t * t * t;
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g(n);
    for (int i = 0; i < n; ++i) {
      const double t = x[i] - (i + 1);
      g[i] = 4 * t * t * t;
    }
    return g;
  };
  p.hessian_diag = [n](const Vec& x) {
    Vec d(n);
    for (int i = 0; i < n; ++i) {
      const double t = x[i] - (i + 1);
      d[i] = 12 * t * t;
    }
    return d;
  };
  p.x0 = 2 * Vec::Ones(n);
  p.phi_star = 0.0;
  p.doc = "sum_i (x_i - i)^4; x0 = 2 ones; phi* = 0";
  return p;
}

MultivariateProblem make_woods(int n) {
  if (n % 4 != 0) throw UnknownName("WOODS needs dim divisible by 4");
  MultivariateProblem p;
  p.name = "WOODS";
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = 0;
    for (int j = 0; j < n / 4; ++j) {
      const double a = x[4 * j], b = x[4 * j + 1], c = x[4 * j + 2], d = x[4 * j + 3];
      f += 100 * (b - a * a) * (b - a * a) + (1 - a) * (1 - a) +
           90 * (d - c * c) * (d - c * c) + (1 - c) * (1 - c) +
           10 * (b + d - 2) * (b + d - 2) + 0.1 * (b - d) * (b - d);
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g = Vec::Zero(n);
    for (int j = 0; j < n / 4; ++j) {
      const double a = x[4 * j], b = x[4 * j + 1], c = x[4 * j + 2], d = x[4 * j + 3];
      g[4 * j] = -400 * a * (b - a * a) - 2 * (1 - a);
      g[4 * j + 1] = 200 * (b - a * a) + 20 * (b + d - 2) + 0.2 * (b - d);
      g[4 * j + 2] = -360 * c * (d - c * c) - 2 * (1 - c);
      g[4 * j + 3] = 180 * (d - c * c) + 20 * (b + d - 2) - 0.2 * (b - d);
    }
    return g;
  };
  p.hessian_diag = [n](const Vec& x) {
    Vec h = Vec::Zero(n);
    for (int j = 0; j < n / 4; ++j) {
      const double a = x[4 * j], b = x[4 * j + 1], c = x[4 * j + 2], d = x[4 * j + 3];
      h[4 * j] = -400 * (b - a * a) + 800 * a * a + 2;
      h[4 * j + 1] = 200 + 20 + 0.2;
      h[4 * j + 2] = -360 * (d - c * c) + 720 * c * c + 2;
      h[4 * j + 3] = 180 + 20 + 0.2;
    }
    return h;
  };
  p.x0 = Vec(n);
  for (int i = 0; i < n; i += 2) {
    p.x0[i] = -3;
    p.x0[i + 1] = -1;
  }
  p.phi_star = 0.0;
  p.doc =
      "extended Woods in groups of 4: 100(b-a^2)^2 + (1-a)^2 + 90(d-c^2)^2 + (1-c)^2 "
      "+ 10(b+d-2)^2 + 0.1(b-d)^2; x0 = (-3,-1,...); phi* = 0";
  return p;
}

MultivariateProblem make_engval1(int n) {
  MultivariateProblem p;
  p.name = "ENGVAL1";
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = 0;
    for (int i = 0; i < n - 1; ++i) {
      const double t = x[i] * x[i] + x[i + 1] * x[i + 1];
      f += t * t - 4 * x[i] + 3;
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x[i] * x[i] + x[i + 1] * x[i + 1];
      g[i] += 4 * t * x[i] - 4;
      g[i + 1] += 4 * t * x[i + 1];
    }
    return g;
  };
  p.hessian_diag = [n](const Vec& x) {
    Vec d = Vec::Zero(n);
    for (int i = 0; i < n - 1; ++i) {
      const double t = x[i] * x[i] + x[i + 1] * x[i + 1];
      d[i] += 4 * t + 8 * x[i] * x[i];
      d[i + 1] += 4 * t + 8 * x[i + 1] * x[i + 1];
    }
    return d;
  };
  p.x0 = 2 * Vec::Ones(n);
  p.phi_star = (n == 100) ? 109.08813614309213 : 0.0;  // derived numerically for n=100
  p.doc = "sum_{i<n} (x_i^2 + x_{i+1}^2)^2 - 4 x_i + 3; x0 = 2 ones; phi*(100) = 109.088136...";
  return p;
}

MultivariateProblem make_genrose(int n) {
  MultivariateProblem p;
  p.name = "GENROSE";
  p.dim = n;
  p.eval = [n](const Vec& x) {
    double f = 1.0;
    for (int i = 1; i < n; ++i) {
      const double t = x[i] - x[i - 1] * x[i - 1];
      const double u = x[i] - 1;
      f += 100 * t * t + u * u;
    }
    return f;
  };
  p.gradient = [n](const Vec& x) {
    Vec g = Vec::Zero(n);
    for (int i = 1; i < n; ++i) {
      const double t = x[i] - x[i - 1] * x[i - 1];
      g[i] += 200 * t + 2 * (x[i] - 1);
      g[i - 1] -= 400 * x[i - 1] * t;
    }
    return g;
  };
  p.hessian_diag = [n](const Vec& x) {
    Vec d = Vec::Zero(n);
    for (int i = 1; i < n; ++i) {
      const double t = x[i] - x[i - 1] * x[i - 1];
      d[i] += 202;
      d[i - 1] += -400 * t + 800 * x[i - 1] * x[i - 1];
    }
    return d;
  };
  p.x0 = Vec(n);
  for (int i = 0; i < n; ++i) p.x0[i] = static_cast<double>(i + 1) / (n + 1);
  p.phi_star = 1.0;
  p.doc =
      "chained Rosenbrock variant: 1 + sum_{i=2}^n 100(x_i - x_{i-1}^2)^2 + (x_i - 1)^2; "
      "x0_i = i/(n+1); phi* = 1 at ones";
  return p;
}

MultivariateProblem make_cube(int dim) {
  check_dim("CUBE", dim, 2);
  MultivariateProblem p;
  p.name = "CUBE";
  p.dim = 2;
  p.eval = [](const Vec& x) {
    const double t = x[1] - x[0] * x[0] * x[0];
    return (x[0] - 1) * (x[0] - 1) + 100 * t * t;
  };
  p.gradient = [](const Vec& x) {
    Vec g(2);
    const double t = x[1] - x[0] * x[0] * x[0];
    g[0] = 2 * (x[0] - 1) - 600 * x[0] * x[0] * t;
    g[1] = 200 * t;
    return g;
  };
  p.hessian_diag = [](const Vec& x) {
    Vec d(2);
    const double t = x[1] - x[0] * x[0] * x[0];
    d[0] = 2 - 1200 * x[0] * t + 1800 * std::pow(x[0], 4);
    d[1] = 200;
    return d;
  };
  p.x0 = Vec(2);
  p.x0 << -1.2, 1.0;
  p.phi_star = 0.0;
  p.doc = "(x_1 - 1)^2 + 100 (x_2 - x_1^3)^2; x0 = (-1.2, 1); phi* = 0";
  return p;
}

MultivariateProblem make_sisser(int dim) {
  check_dim("SISSER", dim, 2);
  MultivariateProblem p;
  p.name = "SISSER";
  p.dim = 2;
  p.eval = [](const Vec& x) {
    return 3 * std::pow(x[0], 4) - 2 * x[0] * x[0] * x[1] * x[1] + 3 * std::pow(x[1], 4);
  };
  p.gradient = [](const Vec& x) {
    Vec g(2);
    g[0] = 12 * std::pow(x[0], 3) - 4 * x[0] * x[1] * x[1];
    g[1] = -4 * x[0] * x[0] * x[1] + 12 * std::pow(x[1], 3);
    return g;
  };
  p.hessian_diag = [](const Vec& x) {
    Vec d(2);
    d[0] = 36 * x[0] * x[0] - 4 * x[1] * x[1];
    d[1] = 36 * x[1] * x[1] - 4 * x[0] * x[0];
    return d;
  };
  p.x0 = Vec(2);
  p.x0 << 1.0, 0.1;
  p.phi_star = 0.0;
  p.doc = "3 x_1^4 - 2 x_1^2 x_2^2 + 3 x_2^4; x0 = (1, 0.1); phi* = 0";
  return p;
}

MultivariateProblem make_box3(int dim) {
  check_dim("BOX3", dim, 3);
  MultivariateProblem p;
  p.name = "BOX3";
  p.dim = 3;
  auto residual = [](const Vec& x, int i, double& r, Vec& jr) {
    const double c = 0.1 * (i + 1);
    const double e1 = std::exp(-c * x[0]);
    const double e2 = std::exp(-c * x[1]);
    const double w = std::exp(-c) - std::exp(-10 * c);
    r = e1 - e2 - x[2] * w;
    jr.resize(3);
    jr << -c * e1, c * e2, -w;
  };
  p.eval = [residual](const Vec& x) {
    double f = 0, r;
    Vec jr;
    for (int i = 0; i < 10; ++i) {
      residual(x, i, r, jr);
      f += r * r;
    }
    return f;
  };
  p.gradient = [residual](const Vec& x) {
    Vec g = Vec::Zero(3);
    double r;
    Vec jr;
    for (int i = 0; i < 10; ++i) {
      residual(x, i, r, jr);
      g += 2 * r * jr;
    }
    return g;
  };
  p.hessian_diag = [residual](const Vec& x) {
    Vec d = Vec::Zero(3);
    double r;
    Vec jr;
    for (int i = 0; i < 10; ++i) {
      const double c = 0.1 * (i + 1);
      residual(x, i, r, jr);
      d[0] += 2 * jr[0] * jr[0] + 2 * r * c * c * std::exp(-c * x[0]);
      d[1] += 2 * jr[1] * jr[1] - 2 * r * c * c * std::exp(-c * x[1]);
      d[2] += 2 * jr[2] * jr[2];
    }
    return d;
  };
  p.x0 = Vec(3);
  p.x0 << 0.0, 10.0, 20.0;
  p.phi_star = 0.0;
  p.doc =
      "sum_{i=1}^{10} (e^{-0.1 i x_1} - e^{-0.1 i x_2} - x_3 (e^{-0.1 i} - e^{-i}))^2; "
      "x0 = (0, 10, 20); phi* = 0 at (1, 10, 1)";
  return p;
}

MultivariateProblem make_brkmcc(int dim) {
  check_dim("BRKMCC", dim, 2);
  MultivariateProblem p;
  p.name = "BRKMCC";
  p.dim = 2;
  // Barrier-penalized Bracken-McCormick; guarded with +inf outside the
  // barrier region so line searches cannot tunnel through the pole.
  auto dom = [](const Vec& x) { return 1 - 0.25 * x[0] * x[0] - x[1] * x[1]; };
  p.eval = [dom](const Vec& x) {
    const double d = dom(x);
    if (d <= 0) return std::numeric_limits<double>::infinity();
    const double lin = x[0] - 2 * x[1] + 1;
    return (x[0] - 2) * (x[0] - 2) + (x[1] - 1) * (x[1] - 1) + 0.04 / d + 5 * lin * lin;
  };
  p.gradient = [dom](const Vec& x) {
    Vec g(2);
    const double d = dom(x);
    const double lin = x[0] - 2 * x[1] + 1;
    g[0] = 2 * (x[0] - 2) + 0.04 / (d * d) * 0.5 * x[0] + 10 * lin;
    g[1] = 2 * (x[1] - 1) + 0.04 / (d * d) * 2 * x[1] - 20 * lin;
    return g;
  };
  p.hessian_diag = [dom](const Vec& x) {
    Vec h(2);
    const double d = dom(x);
    h[0] = 2 + 0.04 * (0.5 / (d * d) + 2 * 0.25 * x[0] * x[0] / (d * d * d)) + 10;
    h[1] = 2 + 0.04 * (2.0 / (d * d) + 2 * 4 * x[1] * x[1] / (d * d * d)) + 40;
    return h;
  };
  p.x0 = Vec(2);
  p.x0 << 0.1, 0.1;
  p.phi_star = 1.8286273597510582;  // derived numerically for this variant
  p.doc =
      "(x_1-2)^2 + (x_2-1)^2 + 0.04/(1 - x_1^2/4 - x_2^2) + 5 (x_1 - 2 x_2 + 1)^2 "
      "inside the elliptic barrier; x0 = (0.1, 0.1); phi* = 1.82862736 (derived)";
  return p;
}

MultivariateProblem make_zangwil2(int dim) {
  check_dim("ZANGWIL2", dim, 2);
  MultivariateProblem p;
  p.name = "ZANGWIL2";
  p.dim = 2;
  p.eval = [](const Vec& x) {
    return (16 * x[0] * x[0] + 16 * x[1] * x[1] - 8 * x[0] * x[1] - 56 * x[0] - 256 * x[1] +
            991) /
           15.0;
  };
  p.gradient = [](const Vec& x) {
    Vec g(2);
    g[0] = (32 * x[0] - 8 * x[1] - 56) / 15.0;
    g[1] = (32 * x[1] - 8 * x[0] - 256) / 15.0;
    return g;
  };
  p.hessian_diag = [](const Vec&) {
    Vec d(2);
    d << 32.0 / 15.0, 32.0 / 15.0;
    return d;
  };
  p.x0 = Vec(2);
  p.x0 << 3.0, 8.0;
  p.phi_star = -18.2;  // exact, at (4, 9)
  p.doc = "(16 x_1^2 + 16 x_2^2 - 8 x_1 x_2 - 56 x_1 - 256 x_2 + 991)/15; x0 = (3, 8); phi* = -18.2";
  return p;
}

int default_or(int dim, int def) { return dim == 0 ? def : dim; }

}  // namespace

std::vector<std::string> multivariate_names() {
  return {"ARWHEAD", "TRIDIA", "NONDIA", "DQRTIC", "QUARTC", "WOODS",
          "ENGVAL1", "GENROSE", "CUBE",   "SISSER", "BOX3",   "BRKMCC",
          "ZANGWIL2"};
}

MultivariateProblem multivariate(const std::string& name, int dim) {
  if (name == "ARWHEAD") return make_arwhead(default_or(dim, 100));
  if (name == "TRIDIA") return make_tridia(default_or(dim, 100));
  if (name == "NONDIA") return make_nondia(default_or(dim, 100));
  if (name == "DQRTIC" || name == "QUARTC") return make_dqrtic(default_or(dim, 100), name);
  if (name == "WOODS") return make_woods(default_or(dim, 100));
  if (name == "ENGVAL1") return make_engval1(default_or(dim, 100));
  if (name == "GENROSE") return make_genrose(default_or(dim, 100));
  if (name == "CUBE") return make_cube(dim);
  if (name == "SISSER") return make_sisser(dim);
  if (name == "BOX3") return make_box3(dim);
  if (name == "BRKMCC") return make_brkmcc(dim);
  if (name == "ZANGWIL2") return make_zangwil2(dim);
  throw UnknownName("no multivariate problem named '" + name + "'");
}

}  // namespace adafd
