#include <doctest.h>

#include <cmath>
#include <random>

#include "adafd/errors.hpp"
#include "adafd/noisy.hpp"
#include "adafd/testing_ratio.hpp"

using namespace adafd;

TEST_CASE("FD with alpha 4 gives the classic |f(t+4h) - 4f(t+h) + 3f(t)| / (8 eps)") {
  const TestingRatio r = generate_ratio(builtin_scheme("FD"), Rational(4));
  CHECK(r.shifts == std::vector<Rational>{Rational(0), Rational(1), Rational(4)});
  CHECK(r.weights == std::vector<Rational>{Rational(3, 8), Rational(-1, 2), Rational(1, 8)});
  CHECK(r.norm_A == Rational(2));
  CHECK(r.c_r.abs() == Rational(3, 4));
}

TEST_CASE("CD with alpha 3 gives |f(t+3h) - 3f(t+h) + 3f(t-h) - f(t-3h)| / (8 eps)") {
  const TestingRatio r = generate_ratio(builtin_scheme("CD"), Rational(3));
  CHECK(r.shifts ==
        std::vector<Rational>{Rational(-3), Rational(-1), Rational(1), Rational(3)});
  CHECK(r.weights == std::vector<Rational>{Rational(1, 8), Rational(-3, 8), Rational(3, 8),
                                           Rational(-1, 8)});
  CHECK(r.c_r.abs() == Rational(1));
}

TEST_CASE("L2_CD with alpha 2 gives the 5-point ratio over 16 eps") {
  const TestingRatio r = generate_ratio(builtin_scheme("L2_CD"), Rational(2));
  CHECK(r.shifts == std::vector<Rational>{Rational(-2), Rational(-1), Rational(0), Rational(1),
                                          Rational(2)});
  // global sign normalized so the first weight is positive
  CHECK(r.weights == std::vector<Rational>{Rational(1, 16), Rational(-1, 4), Rational(3, 8),
                                           Rational(-1, 4), Rational(1, 16)});
  CHECK(r.norm_A == Rational(4));
}

TEST_CASE("generation guards") {
  CHECK_THROWS_AS(generate_ratio(builtin_scheme("FD"), Rational(1)), DegenerateRatio);
  CHECK_THROWS_AS(generate_ratio(builtin_scheme("FD"), Rational(-2)), DegenerateRatio);
}

TEST_CASE("normalization and validity hold for generated ratios") {
  std::vector<int> alphas = {2, 3, 4, 5};
  for (const auto& s : builtin_schemes()) {
    for (int a : alphas) {
      const TestingRatio r = generate_ratio(s, Rational(a));
      Rational l1(0), first = r.weights.front();
      for (const auto& w : r.weights) l1 = l1 + w.abs();
      CHECK(l1 == Rational(1));
      CHECK(first > Rational(0));
      // annihilates monomials below order q
      for (int l = 0; l < r.q; ++l) {
        Rational acc(0);
        for (std::size_t j = 0; j < r.shifts.size(); ++j)
          acc = acc + r.weights[j] * r.shifts[j].pow(l);
        CHECK(acc.is_zero());
      }
      // c_r consistency with the generation formula, up to the global sign
      const Rational formula =
          (s.c_q * (Rational(1) - Rational(a).pow(s.q - s.d)) / r.norm_A).abs();
      CHECK(r.c_r.abs() == formula);
    }
  }
}

TEST_CASE("optimal ratio reproduces the reference table") {
  CHECK(optimal_ratio(generate_ratio(builtin_scheme("FD"), Rational(4))) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(optimal_ratio(generate_ratio(builtin_scheme("CD"), Rational(3))) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(optimal_ratio(generate_ratio(builtin_scheme("FD_3P"), Rational(3))) ==
        doctest::Approx(48.0 / 13).epsilon(1e-12));
  CHECK(optimal_ratio(generate_ratio(builtin_scheme("FD_4P"), Rational(3))) ==
        doctest::Approx(8.25).epsilon(0.01 / 8.25));
  CHECK(optimal_ratio(generate_ratio(builtin_scheme("CD_4P"), Rational(2))) ==
        doctest::Approx(2.5).epsilon(1e-12));
  CHECK(optimal_ratio(generate_ratio(builtin_scheme("L2_CD"), Rational(2))) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("default alpha matches the reference table") {
  CHECK(default_alpha(builtin_scheme("FD")) == 4);
  CHECK(default_alpha(builtin_scheme("CD")) == 3);
  CHECK(default_alpha(builtin_scheme("FD_3P")) == 3);
  CHECK(default_alpha(builtin_scheme("FD_4P")) == 3);
  CHECK(default_alpha(builtin_scheme("CD_4P")) == 2);
  CHECK(default_alpha(builtin_scheme("L2_CD")) == 2);
}

TEST_CASE("bound selection") {
  const RatioBounds b3 = select_bounds(3.0);
  CHECK(b3.r_l == doctest::Approx(1.5));
  CHECK(b3.r_u == doctest::Approx(6.0));

  const RatioBounds b825 = select_bounds(8.25);
  CHECK(b825.r_l == doctest::Approx(4.125));
  CHECK(b825.r_u == doctest::Approx(16.5));

  const RatioBounds small = select_bounds(0.5);
  CHECK(small.r_l == doctest::Approx(1.1));
  CHECK(small.r_u == doctest::Approx(3.3));

  CHECK(b3.r_l > 1.0);
  CHECK(b3.r_u > b3.r_l + 2.0);
}

TEST_CASE("evaluate_ratio") {
  const TestingRatio fd4 = generate_ratio(builtin_scheme("FD"), Rational(4));

  SUBCASE("constant function gives 0") {
    NoisyOracle o = make_noisy([](double) { return 3.7; }, 1.0, 0, NoiseKind::None);
    CHECK(evaluate_ratio(fd4, o, 0.3, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("t^2 with h=1 and no noise gives 3/2") {
    NoisyOracle o = make_noisy([](double t) { return t * t; }, 1.0, 0, NoiseKind::None);
    CHECK(evaluate_ratio(fd4, o, 0.0, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
  }

  SUBCASE("zero noise level rejected") {
    NoisyOracle o = make_noisy([](double t) { return t; }, 0.0, 0);
    CHECK_THROWS_AS(evaluate_ratio(fd4, o, 0.0, 1.0), ZeroNoiseLevel);
  }
}

TEST_CASE("noise perturbs any ratio by at most 1") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uh(1e-3, 10.0), ut(-2.0, 2.0);
  for (const auto& s : builtin_schemes()) {
    const TestingRatio r = generate_ratio(s, Rational(default_alpha(s)));
    for (int rep = 0; rep < 40; ++rep) {
      const double t = ut(rng), h = uh(rng), eps = 1e-4;
      auto phi = [](double x) { return std::sin(1.3 * x) + 0.2 * x * x; };
      NoisyOracle clean = make_noisy(phi, eps, 0, NoiseKind::None);
      NoisyOracle noisy = make_noisy(phi, eps, rng());
      const double diff =
          std::fabs(evaluate_ratio(r, noisy, t, h) - evaluate_ratio(r, clean, t, h));
      if (diff > 1.0 + 1e-9) FAIL("ratio moved by more than 1: " << diff);
    }
  }
}

TEST_CASE("ratio is affine-invariant on the shared noise path") {
  const TestingRatio cd3 = generate_ratio(builtin_scheme("CD"), Rational(3));
  NoisyOracle base = make_noisy([](double t) { return std::cos(t); }, 1e-1, 23);
  NoisyOracle scaled = affine_view(base, 10.0, 5.0);
  for (double h : {1e-2, 1e-1, 1.0}) {
    const double r0 = evaluate_ratio(cd3, base, 1.0, h);
    const double r1 = evaluate_ratio(cd3, scaled, 1.0, h);
    CHECK(r1 == doctest::Approx(r0).epsilon(1e-12));
  }
}
