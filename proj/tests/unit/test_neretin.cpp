#include <doctest.h>

#include <random>

#include "loopvir/loops.hpp"
#include "loopvir/neretin.hpp"
#include "oracles.hpp"

using namespace loopvir;

TEST_CASE("low Neretin polynomials") {
  const NeretinTable t = neretin_table(3);
  CHECK(t[0].is_zero());
  CHECK(t[1].is_zero());
  CHECK(t[2].to_string() == "6*L^-2*(u1^2 - u2)");
  CHECK(t[3].to_string() == "-24*L^-3*(2*u1^3 - 3*u1*u2 + u3)");
  CHECK_THROWS_AS(t[4], TruncationError);
  CHECK_THROWS_AS(neretin_table(-1), DomainError);
  CHECK_THROWS_AS(neretin_table(4, 2), TruncationError);
}

TEST_CASE("P_2 against brute-force reversion") {
  const int N = 3;
  const CoeffPoly L = CoeffPoly::lambda(N);
  std::vector<CoeffPoly> a{CoeffPoly(GaussianRational(), N), L};
  for (int n = 1; n <= N; ++n) a.push_back(L * CoeffPoly::u(n, N));
  const auto b = oracle::naive_reversion(a, 3, CoeffPoly::lambda(N, -1), CoeffPoly(GaussianRational(), N));
  const CoeffPoly p2 = oracle::schwarzian_at_zero(b[1], b[2], b[3], L);
  CHECK(p2 == neretin_table(2, N)[2]);
}

TEST_CASE("P_k is bi-homogeneous") {
  const NeretinTable t = neretin_table(10);
  for (int k = 2; k <= 10; ++k) {
    const auto g = t[k].grading();
    REQUIRE(g.has_value());
    CHECK(g->lambda_degree == -k);
    CHECK(g->u_weight == k);
  }
}

TEST_CASE("table evaluation matches the concrete map") {
  std::mt19937 rng(42);
  const int K = 7;
  const NeretinTable t = neretin_table(K);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<GaussianRational> u;
    for (int n = 1; n <= K; ++n) u.push_back(oracle::random_gaussian(rng, 1, 9));
    const GaussianRational lambda(oracle::random_rational(rng, 5, 3).abs() + Rational(1));
    const Loop<GaussianRational> loop = make_interior_series(lambda, u);
    const auto direct = neretin_P_from_interior(interior_map(loop, K + 1), K);
    const auto via_table = eval_P(loop, t);
    for (int k = 0; k <= K; ++k) CHECK(direct[static_cast<std::size_t>(k)] == via_table[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("exterior Schwarzian coefficients") {
  // G(x) = b1 x + b2 x^2 + b3 x^3 + ...
  const GaussianRational b1(2), b2(Rational(1, 3)), b3(Rational(-1, 4), Rational(1));
  const SeriesAtInfinity<GaussianRational> g{TruncSeries<GaussianRational>(1, {b1, b2, b3}, 6)};
  const auto q = neretin_Q_from_exterior(g, 2);
  CHECK(q[0].is_zero());
  CHECK(q[1].is_zero());
  CHECK(q[2] == oracle::schwarzian_at_zero(b1, b2, b3, b1.inverse()));
}

TEST_CASE("contour pairings pick out single coefficients") {
  const NeretinTable t = neretin_table(4);
  for (int n = 0; n >= -4; --n) {
    const auto pr = pair_contour_interior(n, t);
    CHECK(pr.phi == t[-n] * GaussianRational(Rational(-1, 3)));
    CHECK(pr.psi == pr.phi * GaussianRational::i());
  }
  CHECK_THROWS_AS(pair_contour_interior(1, t), DomainError);
  const std::vector<GaussianRational> q{0, 0, 6, GaussianRational(Rational(1, 2)), 9};
  for (int n = 0; n <= 4; ++n) {
    const auto pr = pair_contour_exterior<GaussianRational>(n, q);
    CHECK(pr.phi == q[static_cast<std::size_t>(n)] * GaussianRational(Rational(1, 3)));
  }
}

TEST_CASE("table output") {
  const NeretinTable t = neretin_table(2);
  CHECK(t.to_string() == "P_0 = 0\nP_1 = 0\nP_2 = 6*L^-2*(u1^2 - u2)\n");
  const auto j = t.to_json();
  CHECK(j["K"] == 2);
  CHECK(j["entries"][2]["poly"] == "6*L^-2*(u1^2 - u2)");
  CHECK(t.with_cutoff(5)[2].cutoff() == 5);
}
