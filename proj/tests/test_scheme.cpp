#include <doctest.h>

#include <cmath>
#include <random>

#include "adafd/errors.hpp"
#include "adafd/scheme.hpp"

using namespace adafd;

namespace {
std::vector<Rational> R(std::initializer_list<long long> v) {
  std::vector<Rational> out;
  for (long long x : v) out.emplace_back(x);
  return out;
}
}  // namespace

TEST_CASE("derive_weights reproduces the standard stencils") {
  const Scheme fd3 = derive_weights(1, R({0, 1, 2}));
  CHECK(fd3.weights == std::vector<Rational>{Rational(-3, 2), Rational(2), Rational(-1, 2)});
  CHECK(fd3.q == 3);

  const Scheme l2cd = derive_weights(2, R({-1, 0, 1}));
  CHECK(l2cd.weights == std::vector<Rational>{Rational(1), Rational(-2), Rational(1)});
  CHECK(l2cd.q == 4);
  CHECK(l2cd.c_q == Rational(1, 12));

  const Scheme fd = derive_weights(1, R({0, 1}));
  CHECK(fd.weights == std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(fd.q == 2);
  CHECK(fd.c_q == Rational(1, 2));
}

TEST_CASE("derive_weights rejects bad input") {
  CHECK_THROWS_AS(derive_weights(1, R({0, 0, 1})), SingularSystem);
  CHECK_THROWS_AS(derive_weights(2, R({0, 1})), DegreeTooLow);
}

TEST_CASE("builtin schemes match the reference table") {
  const auto& v = builtin_schemes();
  REQUIRE(v.size() == 6);

  const Scheme& cd4 = builtin_scheme("CD_4P");
  CHECK(cd4.shifts == std::vector<Rational>{Rational(-2), Rational(-1), Rational(1), Rational(2)});
  CHECK(cd4.weights == std::vector<Rational>{Rational(1, 12), Rational(-2, 3), Rational(2, 3),
                                             Rational(-1, 12)});
  CHECK(cd4.q == 5);

  CHECK(builtin_scheme("CD").c_q == Rational(1, 6));
  CHECK(builtin_scheme("FD").q == 2);
  CHECK(builtin_scheme("FD_3P").q == 3);
  CHECK(builtin_scheme("FD_4P").q == 4);
  CHECK(builtin_scheme("FD_4P").weights ==
        std::vector<Rational>{Rational(-11, 6), Rational(3), Rational(-3, 2), Rational(1, 3)});
  CHECK(builtin_scheme("L2_CD").d == 2);
  CHECK_THROWS_AS(builtin_scheme("nope"), UnknownName);

  // round-trip: re-deriving from each scheme's own shifts gives its weights
  for (const auto& s : v) {
    const Scheme re = derive_weights(s.d, s.shifts);
    CHECK(re.weights == s.weights);
    CHECK(re.q == s.q);
    CHECK(re.c_q == s.c_q);
  }
}

TEST_CASE("apply_scheme") {
  const Scheme& fd = builtin_scheme("FD");
  const std::vector<double> lin = {0.0, 0.5};
  CHECK(apply_scheme(fd, lin, 0.5) == doctest::Approx(1.0));

  const Scheme& l2 = builtin_scheme("L2_CD");
  const std::vector<double> quad = {0.81, 1.0, 1.21};
  CHECK(apply_scheme(l2, quad, 0.1) == doctest::Approx(2.0).epsilon(1e-10));

  // CD on t^3 at t=0, h=1: estimate 1, truth 0, error = c_q phi''' h^2 = 1
  const Scheme& cd = builtin_scheme("CD");
  const std::vector<double> cub = {-1.0, 1.0};
  CHECK(apply_scheme(cd, cub, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("polynomial exactness for every builtin scheme") {
  for (const auto& s : builtin_schemes()) {
    for (int l = 0; l < s.q; ++l) {
      double acc = 0;
      for (int j = 0; j < s.points(); ++j)
        acc += s.weights_d[j] * std::pow(s.shifts_d[j], l);
      double fact = 1;
      for (int i = 2; i <= l; ++i) fact *= i;
      const double expected = (l == s.d) ? fact : 0.0;
      CHECK(std::fabs(acc - expected) < 1e-10);
    }
  }
}

TEST_CASE("noiseless convergence order on exp") {
  for (const auto& s : builtin_schemes()) {
    auto err_at = [&](double h) {
      std::vector<double> vals(s.shifts_d.size());
      for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = std::exp(1.0 + h * s.shifts_d[j]);
      return std::fabs(apply_scheme(s, vals, h) - std::exp(1.0));
    };
    // high-order stencils reach the round-off floor below h ~ 1e-2
    const double e1 = err_at(1e-1), e2 = err_at(1e-2);
    const double slope = std::log10(e1 / e2);
    CHECK(slope >= s.q - s.d - 0.1);
    CHECK(err_at(1e-3) < e1);
  }
}

TEST_CASE("deterministic bound and optimal interval") {
  const Scheme& fd = builtin_scheme("FD");
  CHECK(deterministic_error_bound(fd, 1.0, 1e-4, 0.02) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(deterministic_error_bound(fd, 0.0, 0.0, 0.3) == 0.0);

  CHECK(optimal_interval(fd, 1.0, 1e-6) == doctest::Approx(2e-3).epsilon(1e-12));
  CHECK(optimal_interval(builtin_scheme("CD"), 3.0, 1e-3) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(optimal_interval(builtin_scheme("FD_3P"), 6.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("brute-force worst case validates the CD bound") {
  // CD, L3=1, eps_f=1e-3, h=0.1: sup over |eps|<=eps_f sign patterns and the
  // worst cubic phi = +-t^3/6 (|phi'''| <= 1), evaluated at t=0.
  const Scheme& cd = builtin_scheme("CD");
  const double h = 0.1, eps_f = 1e-3, L3 = 1.0;
  double worst = 0;
  for (int sphi = -1; sphi <= 1; sphi += 2)
    for (int e0 = -1; e0 <= 1; ++e0)
      for (int e1 = -1; e1 <= 1; ++e1) {
        auto phi = [&](double t) { return sphi * t * t * t / 6.0; };
        const std::vector<double> vals = {phi(-h) + e0 * eps_f, phi(h) + e1 * eps_f};
        const double err = std::fabs(apply_scheme(cd, vals, h) - 0.0);
        worst = std::max(worst, err);
      }
  const double bound = deterministic_error_bound(cd, L3, eps_f, h);
  CHECK(worst == doctest::Approx(bound).epsilon(1e-9));
  CHECK(worst <= bound * (1 + 1e-12));
}

TEST_CASE("bound is minimized at the optimal interval") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uL(0.1, 10.0), ue(1e-8, 1e-2);
  for (const auto& s : builtin_schemes()) {
    for (int rep = 0; rep < 5; ++rep) {
      const double L = uL(rng), eps = ue(rng);
      const double hstar = optimal_interval(s, L, eps);
      const double d = 1e-6;
      const double up = deterministic_error_bound(s, L, eps, hstar * (1 + d));
      const double dn = deterministic_error_bound(s, L, eps, hstar * (1 - d));
      const double mid = deterministic_error_bound(s, L, eps, hstar);
      const double grad_log = (up - dn) / (2 * d) / mid;
      CHECK(std::fabs(grad_log) < 1e-6);
    }
  }
}

TEST_CASE("stochastic MSE bound and optimal interval") {
  const Scheme& cd = builtin_scheme("CD");
  CHECK(stochastic_optimal_interval(cd, 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  const Scheme& fd = builtin_scheme("FD");
  CHECK(stochastic_optimal_interval(fd, 1.0, 1e-4) ==
        doctest::Approx(std::pow(8.0, 0.25) * 1e-2).epsilon(1e-10));

  // sigma_f = 0 leaves only the truncation term
  CHECK(stochastic_mse_bound(cd, 2.0, 0.0, 0.3) ==
        doctest::Approx((1.0 / 36) * 4.0 * std::pow(0.3, 4)).epsilon(1e-12));
}

TEST_CASE("sum of weights vanishes for d >= 1") {
  for (const auto& s : builtin_schemes()) {
    Rational sum(0);
    for (const auto& w : s.weights) sum = sum + w;
    CHECK(sum.is_zero());
  }
}

TEST_CASE("lagrange bound") {
  // t must be an interpolation node; CD excludes it
  const auto cd_shifts = std::vector<Rational>{Rational(-1), Rational(1)};
  CHECK_THROWS_AS(lagrange_error_bound(cd_shifts, 0, 1.0, 0.0, 0.1), IndexOutOfRange);
  CHECK_THROWS_AS(lagrange_error_bound(cd_shifts, 5, 1.0, 0.0, 0.1), IndexOutOfRange);

  const auto fd_shifts = std::vector<Rational>{Rational(0), Rational(1)};
  CHECK(lagrange_error_bound(fd_shifts, 0, 1.0, 0.0, 0.1) == doctest::Approx(0.05));

  const auto fd3_shifts = std::vector<Rational>{Rational(0), Rational(1), Rational(2)};
  CHECK(lagrange_error_bound(fd3_shifts, 0, 1.0, 0.0, 1.0) == doctest::Approx(1.0 / 3));
}

TEST_CASE("closed-form expressions are printable") {
  const auto e = closed_form_expressions(builtin_scheme("FD_3P"));
  CHECK(e.deterministic_bound == "eps_g(h) = (1/3) L3 h^2 + 4 eps_f / h");
  CHECK(e.deterministic_optimal_h == "h* = (6 eps_f / L3)^(1/3)");
}
