#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "adafd/errors.hpp"
#include "adafd/problems.hpp"

using namespace adafd;

TEST_CASE("univariate registry lookups") {
  CHECK(univariate("cos").eval(0.0) == 1.0);
  CHECK_THROWS_AS(univariate("missing"), UnknownName);
}

TEST_CASE("univariate analytic values") {
  const auto& e2 = univariate("expm1_sq");
  CHECK(e2.derivative(-8.0, 1) == doctest::Approx(-6.70e-4).epsilon(2e-3));

  const auto& quartic = univariate("quartic");
  CHECK(quartic.derivative(1.0, 1) == 0.0);
  CHECK(quartic.eval(2.0) == doctest::Approx(16 + 12 - 20));

  // cubic has identically zero fifth derivative
  const auto& cubic = univariate("cubic_steep");
  CHECK(cubic.derivative(0.37, 5) == 0.0);
  CHECK(cubic.derivative(1e-9, 1) == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("analytic derivatives agree with central differences of the order below") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  for (const auto& p : univariate_registry()) {
    const double h = 1e-4 / p.scale;
    for (int k = 1; k <= 7; ++k) {
      for (int rep = 0; rep < 3; ++rep) {
        const double t = ut(rng);
        const double fd = (p.derivative(t + h, k - 1) - p.derivative(t - h, k - 1)) / (2 * h);
        const double an = p.derivative(t, k);
        const double scale = std::max({1e-8, std::fabs(an), std::fabs(fd)});
        if (std::fabs(fd - an) / scale > 1e-5)
          FAIL(p.name << " order " << k << " mismatch: " << fd << " vs " << an);
      }
    }
  }
}

TEST_CASE("parametric families") {
  const auto s = parametric_sin(10.0, 0.1);
  CHECK(s.eval(0.3) == doctest::Approx(10 * std::sin(0.03)));
  CHECK(s.derivative(0.0, 1) == doctest::Approx(1.0));

  const auto e = parametric_expm1(2.0, 100.0);
  CHECK(e.derivative(0.0, 3) == doctest::Approx(2.0 * 1e6));

  const auto poly = polynomial_problem({1.0, 0.0, 3.0});  // 1 + 3t^2
  CHECK(poly.eval(2.0) == 13.0);
  CHECK(poly.derivative(2.0, 1) == 12.0);
  CHECK(poly.derivative(2.0, 2) == 6.0);
  CHECK(poly.derivative(2.0, 3) == 0.0);
}

TEST_CASE("multivariate registry") {
  CHECK(multivariate_names().size() == 13);
  CHECK_THROWS_AS(multivariate("missing"), UnknownName);
  CHECK(multivariate("ZANGWIL2").dim == 2);
  CHECK_THROWS_AS(multivariate("ZANGWIL2", 5), UnknownName);
  CHECK(multivariate("ARWHEAD").dim == 100);
  CHECK(multivariate("ARWHEAD", 10).dim == 10);
}

TEST_CASE("gradients agree with finite differences at x0") {
  // 4-point central stencil with a coarse step: the objectives here are low-
  // degree polynomials in each coordinate, and f(x0) can be ~1e9 (DQRTIC),
  // so a tiny step would sit on the cancellation floor.
  for (const auto& name : multivariate_names()) {
    const MultivariateProblem p = multivariate(name);
    const Eigen::VectorXd g = p.gradient(p.x0);
    for (int i = 0; i < std::min(p.dim, 12); ++i) {
      const double h = 0.03 * std::max(1.0, std::fabs(p.x0[i]));
      auto at = [&](double s) {
        Eigen::VectorXd x = p.x0;
        x[i] += s * h;
        return p.eval(x);
      };
      const double fd = (at(-2) - 8 * at(-1) + 8 * at(1) - at(2)) / (12 * h);
      const double scale = std::max({1.0, std::fabs(fd), std::fabs(g[i])});
      if (std::fabs(fd - g[i]) / scale > 1e-5)
        FAIL(name << " gradient component " << i << ": " << fd << " vs " << g[i]);
    }
  }
}

TEST_CASE("Hessian diagonals agree with finite differences of the gradient") {
  for (const auto& name : multivariate_names()) {
    const MultivariateProblem p = multivariate(name);
    const Eigen::VectorXd d = p.hessian_diag(p.x0);
    const double h = 1e-6;
    for (int i = 0; i < std::min(p.dim, 12); ++i) {
      Eigen::VectorXd xp = p.x0, xm = p.x0;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (p.gradient(xp)[i] - p.gradient(xm)[i]) / (2 * h);
      const double scale = std::max({1.0, std::fabs(fd), std::fabs(d[i])});
      if (std::fabs(fd - d[i]) / scale > 1e-4)
        FAIL(name << " hessian diag " << i << ": " << fd << " vs " << d[i]);
    }
  }
}

TEST_CASE("TRIDIA minimum is zero by the normal equations at n = 10") {
  const MultivariateProblem p = multivariate("TRIDIA", 10);
  // quadratic: f(x) = ||A x - b||_W^2 form; solve grad = 0 directly
  const int n = 10;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd g0 = p.gradient(Eigen::VectorXd::Zero(n));
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[j] = 1.0;
    H.col(j) = p.gradient(e) - g0;
  }
  const Eigen::VectorXd xstar = H.ldlt().solve(-g0);
  CHECK(p.eval(xstar) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p.gradient(xstar).norm() < 1e-10);
}

TEST_CASE("known optima") {
  // ZANGWIL2: exact minimizer (4, 9), value -18.2
  const MultivariateProblem z = multivariate("ZANGWIL2");
  Eigen::VectorXd xz(2);
  xz << 4.0, 9.0;
  CHECK(z.eval(xz) == doctest::Approx(-18.2).epsilon(1e-14));
  CHECK(z.gradient(xz).norm() < 1e-12);

  // GENROSE variant: value 1 at ones
  const MultivariateProblem gr = multivariate("GENROSE", 20);
  CHECK(gr.eval(Eigen::VectorXd::Ones(20)) == 1.0);
  CHECK(gr.gradient(Eigen::VectorXd::Ones(20)).norm() == 0.0);

  // ARWHEAD: value 0 at (1,...,1,0)
  const MultivariateProblem aw = multivariate("ARWHEAD", 10);
  Eigen::VectorXd xa = Eigen::VectorXd::Ones(10);
  xa[9] = 0.0;
  CHECK(aw.eval(xa) == doctest::Approx(0.0));
  CHECK(aw.gradient(xa).norm() < 1e-12);
}

TEST_CASE("phi_star lower-bounds values near the optimum") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> dn(0.0, 1e-4);
  for (const auto& name : {"TRIDIA", "WOODS", "CUBE", "SISSER", "ZANGWIL2"}) {
    const MultivariateProblem p = multivariate(name, 0);
    Eigen::VectorXd xstar;
    if (std::string(name) == "ZANGWIL2") {
      xstar = Eigen::VectorXd(2);
      xstar << 4.0, 9.0;
    } else if (std::string(name) == "TRIDIA") {
      xstar = Eigen::VectorXd(p.dim);
      xstar[0] = 1.0;
      for (int i = 1; i < p.dim; ++i) xstar[i] = xstar[i - 1] / 2.0;
    } else if (std::string(name) == "SISSER") {
      xstar = Eigen::VectorXd::Zero(p.dim);
    } else {
      xstar = Eigen::VectorXd::Ones(p.dim);
    }
    for (int rep = 0; rep < 10; ++rep) {
      Eigen::VectorXd x = xstar;
      for (int i = 0; i < p.dim; ++i) x[i] += dn(rng);
      if (p.eval(x) < p.phi_star - 1e-12) FAIL(name << ": value below phi_star");
    }
  }
}
