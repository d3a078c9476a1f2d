#include <doctest.h>

#include <random>

#include "loopvir/poly.hpp"
#include "oracles.hpp"

using namespace loopvir;

namespace {

CoeffPoly random_poly(std::mt19937& rng, int cutoff) {
  std::uniform_int_distribution<int> pick(0, cutoff + 1);
  std::uniform_int_distribution<int> len(0, 3);
  CoeffPoly out(GaussianRational(), cutoff);
  for (int term = 0; term < 4; ++term) {
    CoeffPoly mono(oracle::random_gaussian(rng, 5, 3), cutoff);
    for (int j = len(rng); j > 0; --j) {
      const int v = pick(rng);
      mono *= v == 0 ? CoeffPoly::lambda(cutoff, -1) : (v == 1 ? CoeffPoly::central(cutoff) : CoeffPoly::u(v - 1, cutoff));
    }
    out += mono;
  }
  return out;
}

}  // namespace

TEST_CASE("variable names") {
  CHECK(Var::lambda().name() == "L");
  CHECK(Var::central().name() == "c");
  CHECK(Var::u(3).name() == "u3");
  CHECK(Var::parse("u12") == Var::u(12));
  CHECK(Var::parse("L") == Var::lambda());
  CHECK_THROWS_AS(Var::parse("u0"), ParseError);
  CHECK_THROWS_AS(Var::parse("x"), ParseError);
}

TEST_CASE("canonical printing") {
  const int N = 3;
  const CoeffPoly L = CoeffPoly::lambda(N);
  const CoeffPoly u1 = CoeffPoly::u(1, N);
  const CoeffPoly u2 = CoeffPoly::u(2, N);
  const CoeffPoly p = GaussianRational(6) * CoeffPoly::lambda(N, -2) * (u1 * u1 - u2);
  CHECK(p.to_string() == "6*L^-2*(u1^2 - u2)");
  CHECK(CoeffPoly(GaussianRational(), N).to_string() == "0");
  CHECK((L - L).is_zero());
  CHECK(CoeffPoly::lambda(N).to_string() == "L");
}

TEST_CASE("cutoffs must agree") {
  CHECK_THROWS_AS(CoeffPoly::u(4, 3), CutoffMismatch);
  CHECK_THROWS_AS(CoeffPoly::u(1, 3) + CoeffPoly::u(1, 4), CutoffMismatch);
  // unbound constants adopt the other operand's cutoff
  const CoeffPoly s = CoeffPoly(2) + CoeffPoly::u(1, 3);
  CHECK(s.cutoff() == 3);
  CHECK(CoeffPoly::u(1, 3).with_cutoff(5).cutoff() == 5);
  CHECK_THROWS(CoeffPoly::u(3, 3).with_cutoff(2));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const CoeffPoly a = random_poly(rng, 3);
    const CoeffPoly b = random_poly(rng, 3);
    const CoeffPoly c = random_poly(rng, 3);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    // Leibniz for the coordinate partials
    for (Var v : {Var::lambda(), Var::central(), Var::u(1), Var::u(3)}) {
      CHECK((a * b).partial(v) == a.partial(v) * b + a * b.partial(v));
    }
  }
}

TEST_CASE("units and powers") {
  const CoeffPoly L = CoeffPoly::lambda(2);
  CHECK(L.pow(-3) * L.pow(3) == CoeffPoly(1));
  CHECK(L.try_inverse().has_value());
  CHECK_FALSE((L + CoeffPoly::u(1, 2)).try_inverse().has_value());
  CHECK_THROWS((L + CoeffPoly(1)).pow(-1));
}

TEST_CASE("grading") {
  const int N = 4;
  const CoeffPoly p = CoeffPoly::lambda(N, -3) * (CoeffPoly::u(1, N) * CoeffPoly::u(2, N) - CoeffPoly::u(3, N));
  const auto g = p.grading();
  REQUIRE(g.has_value());
  CHECK(g->lambda_degree == -3);
  CHECK(g->u_weight == 3);
  CHECK_FALSE((CoeffPoly::u(1, N) + CoeffPoly::u(2, N)).grading().has_value());
  CHECK_THROWS_AS(CoeffPoly(GaussianRational(), N).grading(), DomainError);
}

TEST_CASE("evaluation and substitution") {
  const int N = 2;
  const CoeffPoly p = CoeffPoly::central(N) * CoeffPoly::lambda(N, -1) + CoeffPoly::u(2, N) * GaussianRational::i();
  Assignment<GaussianRational> at{{Var::lambda(), GaussianRational(2)},
                                  {Var::central(), GaussianRational(3)},
                                  {Var::u(1), GaussianRational(0)},
                                  {Var::u(2), GaussianRational(5)}};
  CHECK(p.eval(at) == GaussianRational(Rational(3, 2), Rational(5)));
  CHECK(p.substitute(Var::central(), GaussianRational(0)) == CoeffPoly::u(2, N) * GaussianRational::i());
  CHECK_THROWS_AS(p.substitute(Var::lambda(), GaussianRational(0)), DomainError);
  Assignment<GaussianRational> missing{{Var::lambda(), GaussianRational(2)}};
  CHECK_THROWS_AS(p.eval(missing), DomainError);
  Assignment<Complex> fat{{Var::lambda(), 2.0}, {Var::central(), 3.0}, {Var::u(1), 0.0}, {Var::u(2), 5.0}};
  CHECK(std::abs(p.eval(fat) - Complex(1.5, 5)) < 1e-15);
}

TEST_CASE("derivation extension") {
  const int N = 2;
  // d(L) = L, d(u_n) = n u_n: the grading derivation
  Derivation d{CoeffPoly::lambda(N), {CoeffPoly::u(1, N), GaussianRational(2) * CoeffPoly::u(2, N)}};
  const CoeffPoly p = CoeffPoly::lambda(N, -2) * CoeffPoly::u(1, N) * CoeffPoly::u(2, N);
  CHECK(derivation_apply(d, p) == GaussianRational(1) * p);
  CHECK(derivation_apply(d, CoeffPoly::central(N)).is_zero());
  Derivation short_d{CoeffPoly::lambda(N), {CoeffPoly::u(1, N)}};
  CHECK_THROWS_AS(derivation_apply(short_d, p), TruncationError);
}

TEST_CASE("json form") {
  const CoeffPoly p = GaussianRational(Rational(1, 2), Rational(-1)) * CoeffPoly::lambda(1, -2);
  const auto j = p.to_json();
  REQUIRE(j.size() == 1);
  CHECK(j[0]["exponents"]["L"] == -2);
  CHECK(j[0]["re"] == "1/2");
  CHECK(j[0]["im"] == "-1");
}
