#include <doctest.h>

#include "loopvir/virasoro.hpp"

using namespace loopvir;

TEST_CASE("Phi multipliers") {
  const NeretinTable t = neretin_table(4);
  const CoeffPoly c = CoeffPoly::central(4);
  CHECK(phi(2, t).is_zero());
  CHECK(phi(0, t).is_zero());
  CHECK(phi(-1, t).is_zero());
  CHECK(phi(-2, t) == c * t[2] * GaussianRational(Rational(1, 12)));
  CHECK(phi(-3, t, true) == c * t[3] * GaussianRational(Rational(1, 11)));
  CHECK_THROWS_AS(phi(-5, t), TruncationError);
  const auto g = phi(-4, t).grading();
  REQUIRE(g.has_value());
  CHECK(g->lambda_degree == -4);
}

TEST_CASE("L_k P_m examples") {
  const NeretinTable t = neretin_table(6, lkp_cutoff(2, 6));
  const auto r = lkp_identity_check(2, 2, t);
  CHECK(r.pass);
  WittAction action(lkp_cutoff(2, 2));
  CHECK(action.apply(2, neretin_table(2, action.cutoff())[2]) == CoeffPoly(6));
  for (int k = 0; k <= 4; ++k) {
    for (int m = 0; m <= 4; ++m) CHECK_MESSAGE(lkp_identity_check(k, m, t).pass, k, ",", m);
  }
}

TEST_CASE("negative pairs") {
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 3; ++n) {
      const auto t = neretin_table(k + n, negative_pair_cutoff(k, n));
      CHECK_MESSAGE(negative_pair_identity_check(k, n, t).pass, k, ",", n);
    }
  }
}

TEST_CASE("cocycle diagonal carries the central term") {
  for (int n = -3; n <= 3; ++n) {
    const auto r = cocycle_check(n, -n);
    CHECK_MESSAGE(r.pass, n, " ", r.residual);
  }
  CHECK(cocycle_check(1, 2).pass);
  const auto bad = cocycle_check(2, -2, true);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual != "0");
  CHECK(bad.residual.find('c') != std::string::npos);
}

TEST_CASE("operator relation at c = 0 reduces to Witt") {
  VirasoroContext ctx(virasoro_cutoff(2, -2, 2), 2);
  const CoeffPoly target = CoeffPoly::u(1, ctx.cutoff()) * CoeffPoly::u(2, ctx.cutoff());
  const auto ln = ctx.op(2), lk = ctx.op(-2);
  const CoeffPoly comm = ln.apply(lk.apply(target)) - lk.apply(ln.apply(target));
  const CoeffPoly rhs = ctx.op(0).apply(target) * GaussianRational(4);
  const CoeffPoly central = ctx.c() * target * GaussianRational(Rational(6, 12));
  CHECK(comm == rhs + central);
  CHECK((comm - rhs).substitute(Var::central(), GaussianRational()).is_zero());
  CHECK(virasoro_commutator_check(2, -2, target, ctx).pass);
}

TEST_CASE("operator relation on the constant function") {
  const std::vector<CoeffPoly> targets{CoeffPoly(1), CoeffPoly::lambda(1)};
  for (int n = -2; n <= 2; ++n) {
    for (int k = -2; k <= 2; ++k) {
      for (const auto& r : virasoro_commutator_check(n, k, targets)) CHECK_MESSAGE(r.pass, n, ",", k, " ", r.residual);
    }
  }
}

TEST_CASE("cutoff helpers") {
  CHECK(lkp_cutoff(0, 0) >= 1);
  CHECK(negative_pair_cutoff(2, 3) == 5);
  CHECK(cocycle_table_size(3, -1) == 1);
  CHECK(cocycle_table_size(-3, 1) == 3);
  CHECK(cocycle_table_size(2, 1) == 0);
  CHECK(virasoro_cutoff(-2, -1, 2) >= witt_commutator_cutoff(-2, -1, 2));
}
