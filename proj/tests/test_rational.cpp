#include <doctest.h>

#include "takagi/rational.hpp"

#include <random>
#include <sstream>

using namespace takagi;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(-2, -4).str() == "1/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(6).str() == "6");
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, 4).den() == 2);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p, p/q, signs; rejects junk") {
  CHECK(Rational::parse("7/3") == Rational(7, 3));
  CHECK(Rational::parse("-7/3") == Rational(-7, 3));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("/2"), std::invalid_argument);
}

TEST_CASE("field operations") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
  CHECK(Rational(1, 3) / Rational(2, 3) == Rational(1, 2));
  CHECK(-Rational(1, 3) == Rational(-1, 3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);

  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 50);
  for (int i = 0; i < 200; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("ordering is total and consistent") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(!(Rational(1, 2) < Rational(1, 2)));
  CHECK(Rational(1, 2) <= Rational(1, 2));
  CHECK(Rational(2, 3) > Rational(1, 2));
  CHECK(min(Rational(1, 3), Rational(1, 2)) == Rational(1, 3));
  CHECK(max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("floor, ceil, fractional part") {
  CHECK(Rational(7, 3).floor() == 2);
  CHECK(Rational(-7, 3).floor() == -3);
  CHECK(Rational(6, 3).floor() == 2);
  CHECK(Rational(7, 3).ceil() == 3);
  CHECK(Rational(-7, 3).ceil() == -2);
  CHECK(Rational(-1, 3).frac_mod1() == Rational(2, 3));
  CHECK(Rational(5, 3).frac_mod1() == Rational(2, 3));
  CHECK(Rational(4, 2).frac_mod1() == Rational(0));
  CHECK(Rational(4, 2).is_integer());
  CHECK(!Rational(1, 2).is_integer());
  CHECK(Rational(-3, 4).abs() == Rational(3, 4));
  CHECK(Rational(-3, 4).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(3, 4).sign() == 1);
}

TEST_CASE("double conversion round trips") {
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(-3, 4).to_double() == -0.75);
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.375) == Rational(-3, 8));
  CHECK(Rational::from_double(3.0) == Rational(3));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    double d = u(rng);
    CHECK(Rational::from_double(d).to_double() == d);
  }
}

TEST_CASE("integer power") {
  CHECK(pow_int(Int(3), 4) == 81);
  CHECK(pow_int(Int(2), 0) == 1);
  CHECK(pow_int(Int(10), 12) == Int("1000000000000"));
  CHECK(pow_int(Int(1), 1000) == 1);
}

TEST_CASE("stream output matches str") {
  std::ostringstream os;
  os << Rational(-5, 10);
  CHECK(os.str() == "-1/2");
}
