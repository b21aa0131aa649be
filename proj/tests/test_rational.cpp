#include <doctest.h>

#include "adafd/rational.hpp"

using adafd::Rational;

TEST_CASE("normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK((-Rational(3, 7)).num() == -3);
  CHECK(Rational(-5, 10).abs() == Rational(1, 2));
}

TEST_CASE("comparison and pow") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1) < Rational(0));
  CHECK(Rational(2, 3).pow(2) == Rational(4, 9));
  CHECK(Rational(2).pow(-2) == Rational(1, 4));
  CHECK(Rational(5).pow(0) == Rational(1));
}

TEST_CASE("parse and print") {
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-4).str() == "-4");
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}
