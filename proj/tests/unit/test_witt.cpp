#include <doctest.h>

#include "loopvir/neretin.hpp"
#include "loopvir/witt.hpp"
#include "oracles.hpp"

using namespace loopvir;

TEST_CASE("generator images at small k") {
  const int N = 4;
  const CoeffPoly L = CoeffPoly::lambda(N);
  const auto g0 = witt_generator(0, N);
  CHECK(g0.image_lambda() == L * GaussianRational(Rational(-1, 2)));
  for (int n = 1; n <= N; ++n) CHECK(g0.image_u(n) == CoeffPoly::u(n, N) * GaussianRational(Rational(n, 2)));
  const auto g1 = witt_generator(1, N);
  CHECK(g1.image_lambda().is_zero());
  CHECK(g1.image_u(1) == -L);
  const auto gm1 = witt_generator(-1, N);
  CHECK(gm1.image_lambda() == CoeffPoly::u(1, N));
  CHECK(gm1.n_valid == N - 1);
  CHECK_THROWS_AS(gm1.image_u(N), TruncationError);
  CHECK_THROWS_AS(witt_generator(-4, 4), TruncationError);
}

TEST_CASE("Leibniz on the k = 0 and k = 1 images") {
  const int N = 2;
  const CoeffPoly u1 = CoeffPoly::u(1, N);
  const CoeffPoly p = CoeffPoly::lambda(N, -2) * u1 * u1;
  CHECK(witt_generator(0, N).apply(p) == p * GaussianRational(2));
  CHECK(witt_generator(1, N).apply(u1 * u1) == CoeffPoly::lambda(N) * u1 * GaussianRational(-2));
  CHECK(witt_generator(3, N).apply(CoeffPoly::central(N)).is_zero());
}

TEST_CASE("k >= 1 images are the coefficients of -f^{k+1}") {
  const int N = 6;
  const CoeffPoly L = CoeffPoly::lambda(N);
  const CoeffPoly zero(GaussianRational(), N);
  std::vector<CoeffPoly> f{zero, L};
  for (int n = 1; n <= N; ++n) f.push_back(L * CoeffPoly::u(n, N));
  for (int k = 1; k <= 4; ++k) {
    std::vector<CoeffPoly> power = f;
    for (int j = 0; j < k; ++j) power = oracle::mul(power, f, N + 1, zero);
    const auto g = witt_generator(k, N);
    CHECK(g.image_lambda().is_zero());
    for (int n = 1; n <= N; ++n) {
      CHECK(g.image_u(n) * L == -power[static_cast<std::size_t>(n + 1)]);
    }
  }
}

TEST_CASE("generators shift the u-weight by -k") {
  const int K = 7;
  const NeretinTable t = neretin_table(K, K + 3);
  WittAction action(K + 3);
  for (int k = -3; k <= 4; ++k) {
    for (int m = 2; m <= K; ++m) {
      const CoeffPoly image = action.apply(k, t[m]);
      if (image.is_zero()) continue;
      const auto g = image.grading();
      REQUIRE(g.has_value());
      CHECK(g->u_weight == m - k);
      CHECK(g->lambda_degree == k - m);
    }
  }
}

TEST_CASE("L_0 acts on P_k by k, like -Lambda d/dLambda") {
  const NeretinTable t = neretin_table(8);
  const auto g0 = witt_generator(0, 8);
  for (int k = 0; k <= 8; ++k) {
    const CoeffPoly expect = t[k] * GaussianRational(k);
    CHECK(g0.apply(t[k]) == expect);
    CHECK(-(CoeffPoly::lambda(8) * t[k].partial(Var::lambda())) == expect);
  }
}

TEST_CASE("commutators on the basic pairs") {
  const std::vector<CoeffPoly> targets{CoeffPoly::lambda(1), CoeffPoly::u(1, 1)};
  for (int n = -2; n <= 2; ++n) {
    for (int m = -2; m <= 2; ++m) {
      for (const CheckRecord& r : witt_commutator_check(n, m, targets)) {
        CHECK_MESSAGE(r.pass, r.indices.dump(), " ", r.target, " -> ", r.residual);
      }
    }
  }
  WittAction action(witt_commutator_cutoff(1, -1, 1));
  const CheckRecord r = witt_commutator_check(1, -1, CoeffPoly::lambda(action.cutoff()), action);
  CHECK(r.pass);
  CHECK(r.residual == "0");
}

TEST_CASE("action guards its ring") {
  WittAction action(3);
  CHECK_THROWS_AS(action.apply(-1, CoeffPoly::u(3, 3)), TruncationError);
  CHECK(action.apply(2, CoeffPoly(7)).is_zero());
  CHECK(&action.generator(2) == &action.generator(2));
}

TEST_CASE("tau conjugates the flows") {
  for (int k = -3; k <= 3; ++k) {
    const auto records = tau_flow_identity_records(k, 8);
    CHECK_FALSE(records.empty());
    for (const CheckRecord& r : records) CHECK_MESSAGE(r.pass, r.indices.dump(), " ", r.residual);
  }
}

TEST_CASE("tau conjugation round trip") {
  const TruncSeries<GaussianRational> f(1, {GaussianRational(2), GaussianRational(Rational(1, 3), Rational(1))}, 8);
  const auto back = tau_conjugate(tau_conjugate(f));
  CHECK(back.agrees_with(f));
  // tau phi_{1,t} tau at infinity equals phi_{-1,-t}
  const GaussianRational t(Rational(2, 5));
  const auto lhs = tau_conjugate(flow_series(1, t, FlowKind::phi, 10));
  const auto rhs = flow_series_at_infinity(-1, -t, FlowKind::phi, 8);
  CHECK(lhs.inner.agrees_with(rhs.inner));
}
