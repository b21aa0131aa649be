#include <doctest.h>

#include <cmath>

#include "adafd/baselines.hpp"
#include "adafd/errors.hpp"
#include "adafd/problems.hpp"

using namespace adafd;

TEST_CASE("More-Wild fails on near-symmetric sin at the origin") {
  NoisyOracle o = make_noisy([](double t) { return std::sin(t); }, 1e-8, 1);
  const MWResult r = more_wild(o, 0.0);
  CHECK_FALSE(r.mu.has_value());
  CHECK_FALSE(r.h_forward.has_value());
}

TEST_CASE("More-Wild succeeds away from the symmetry point") {
  // phi'' (1e-2) ~ 1e-2 but the floor L2 = 0.1 binds: h = 2 sqrt(1e-8/0.1)
  NoisyOracle o = make_noisy([](double t) { return std::sin(t); }, 1e-8, 1);
  const MWResult r = more_wild(o, 1e-2);
  REQUIRE(r.h_forward.has_value());
  CHECK(*r.h_forward == doctest::Approx(1.68e-3).epsilon(0.25));
}

TEST_CASE("More-Wild is not affine-invariant: a large offset changes the outcome") {
  auto quad = [](double t) { return 0.5 * t * t; };
  NoisyOracle plain = make_noisy(quad, 1e-3, 5);
  NoisyOracle shifted = affine_view(plain, 1.0, 1e9);
  const MWResult r0 = more_wild(plain, 1.0);
  const MWResult r1 = more_wild(shifted, 1.0);
  const bool same = r0.mu.has_value() == r1.mu.has_value() &&
                    (!r0.mu || std::fabs(*r0.mu - *r1.mu) < 1e-6 * std::fabs(*r0.mu));
  CHECK_FALSE(same);
}

TEST_CASE("More-Wild uses at most seven evaluations") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    NoisyOracle o = make_noisy([](double t) { return std::exp(t) - 1; }, 1e-6, seed);
    const MWResult r = more_wild(o, 0.3);
    CHECK(r.new_evals <= 7);
  }
}

TEST_CASE("fixed interval formulas") {
  CHECK(fixed_forward_interval(1.0, 1e-4) == doctest::Approx(0.02).epsilon(1e-12));
  // the 0.1 floor binds
  CHECK(fixed_forward_interval(0.01, 1e-4) ==
        doctest::Approx(2 * std::sqrt(1e-3)).epsilon(1e-12));
  CHECK(fixed_central_interval(3.0, 1e-3) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("Hessian and third-derivative scales") {
  SUBCASE("constant-diagonal quadratic") {
    MultivariateProblem p = multivariate("ZANGWIL2");
    // diag = 32/15 everywhere
    CHECK(hessian_diag_scale(p, p.x0) == doctest::Approx(32.0 / 15).epsilon(1e-12));
    // cubic terms absent: the 0.1 floor binds
    CHECK(third_derivative_scale(p, p.x0) == doctest::Approx(0.1));
  }
  SUBCASE("separable quartic sum x_i^4 at ones has diag 12") {
    MultivariateProblem p;
    p.name = "quartic";
    p.dim = 4;
    p.hessian_diag = [](const Eigen::VectorXd& x) {
      return Eigen::VectorXd(12 * x.array().square());
    };
    CHECK(hessian_diag_scale(p, Eigen::VectorXd::Ones(4)) == doctest::Approx(12.0));
  }
  SUBCASE("missing analytic derivatives rejected") {
    MultivariateProblem p;
    p.name = "none";
    CHECK_THROWS_AS(hessian_diag_scale(p, Eigen::VectorXd::Ones(2)),
                    MissingAnalyticDerivatives);
  }
}

TEST_CASE("gradient error formulas") {
  CHECK(fixed_gradient_error(100, 1.0, 1e-4) == doctest::Approx(0.2).epsilon(1e-12));
  Eigen::VectorXd L2 = 0.1 * Eigen::VectorXd::Ones(4);
  CHECK(mw_gradient_error(L2, 1e-2) == doctest::Approx(2 * std::sqrt(4e-3)).epsilon(1e-12));
}

TEST_CASE("MW acceptance conditions are re-checkable from cached values") {
  // sin + 10: large |f| keeps condition 2 roomy, curvature passes condition 1
  NoisyOracle o = make_noisy([](double t) { return std::sin(t) + 10.0; }, 1e-6, 3);
  const double t = 0.3, tau1 = 100.0, tau2 = 0.1;
  const MWResult r = more_wild(o, t, tau1, tau2);
  REQUIRE(r.mu.has_value());
  REQUIRE(r.trials == 1);  // first trial accepted here
  const double h1 = std::pow(1e-6, 0.25);
  const double fc = o.value(t), fp = o.value(t + h1), fm = o.value(t - h1);
  CHECK(std::fabs(fp - 2 * fc + fm) >= tau1 * 1e-6);
  CHECK(std::fabs(fp - fc) <= tau2 * std::max(std::fabs(fc), std::fabs(fp)));
  CHECK(std::fabs(fm - fc) <= tau2 * std::max(std::fabs(fc), std::fabs(fm)));
  CHECK(*r.mu == doctest::Approx(std::fabs(fp - 2 * fc + fm) / (h1 * h1)));
}
