#include <doctest.h>

#include <random>

#include "loopvir/scalar.hpp"
#include "oracles.hpp"

using namespace loopvir;

TEST_CASE("rationals stay in lowest terms") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(10, 5).to_string() == "2");
  CHECK(Rational(10, 5).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  CHECK_THROWS_AS(Rational(0).inverse(), DomainError);
  CHECK_FALSE(Rational(0).try_inverse().has_value());
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
}

TEST_CASE("gaussian rationals") {
  const GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  const GaussianRational z(Rational(1, 2), Rational(-3, 4));
  CHECK(z * z.inverse() == GaussianRational(1));
  CHECK(z.conj().im() == Rational(3, 4));
  CHECK(z.norm() == Rational(13, 16));
  CHECK(z.to_string() == "1/2-3/4*i");
  CHECK(GaussianRational(Rational(0), Rational(1, 8)).to_string() == "1/8*i");
  CHECK(GaussianRational::parse("i") == i);
  CHECK(GaussianRational::parse("-i") == -i);
  CHECK(GaussianRational::parse("1/8+1/8*i") == GaussianRational(Rational(1, 8), Rational(1, 8)));
  CHECK_THROWS_AS(GaussianRational().inverse(), DomainError);
}

TEST_CASE("gaussian rational text round trip") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianRational z = oracle::random_gaussian(rng, 40, 17);
    CHECK(GaussianRational::parse(z.to_string()) == z);
  }
}

TEST_CASE("gaussian rationals form a field") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianRational a = oracle::random_gaussian(rng, 9, 7);
    const GaussianRational b = oracle::random_gaussian(rng, 9, 7);
    const GaussianRational c = oracle::random_gaussian(rng, 9, 7);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("central charge") {
  CHECK(central_charge(Rational(4)) == Rational(1));
  CHECK(central_charge(Rational(8, 3)) == Rational(0));
  CHECK(central_charge(Rational(6)) == Rational(0));
  CHECK(central_charge(Rational(2)) == Rational(-2));
  CHECK_THROWS_AS(central_charge(Rational(0)), DomainError);
  CHECK_THROWS_AS(central_charge(Rational(-1)), DomainError);
}

TEST_CASE("complex parsing and formatting") {
  CHECK(parse_complex("0.1+0.1i") == Complex(0.1, 0.1));
  CHECK(parse_complex("-2.5") == Complex(-2.5, 0));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("0.05-0.05i") == Complex(0.05, -0.05));
  CHECK(parse_complex("1/4") == Complex(0.25, 0));
  CHECK(format_complex(Complex(-1, 0)) == "-1");
}
