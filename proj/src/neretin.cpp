#include "loopvir/neretin.hpp"

#include <sstream>

namespace loopvir {

namespace {

TruncSeries<CoeffPoly> build_f(int N, int order) {
  const CoeffPoly lambda = CoeffPoly::lambda(N);
  std::vector<CoeffPoly> c{CoeffPoly(GaussianRational(), N), lambda};
  for (int n = 1; n <= N && n + 1 <= order; ++n) c.push_back(lambda * CoeffPoly::u(n, N));
  return TruncSeries<CoeffPoly>::from_polynomial(std::move(c), order);
}

}  // namespace

TruncSeries<CoeffPoly> symbolic_f(int N, int order) {
  if (N < 1) throw DomainError("symbolic_f: need N >= 1");
  return build_f(N, order < 0 ? N + 1 : order);
}

const CoeffPoly& NeretinTable::operator[](int k) const {
  if (k < 0 || k > K) {
    throw TruncationError("Neretin table holds P_0..P_" + std::to_string(K) + ", P_" + std::to_string(k) +
                          " requested");
  }
  return entries[static_cast<std::size_t>(k)];
}

NeretinTable NeretinTable::with_cutoff(int cutoff) const {
  NeretinTable t{K, cutoff, {}};
  for (const CoeffPoly& p : entries) t.entries.push_back(p.with_cutoff(cutoff));
  return t;
}

std::string NeretinTable::to_string() const {
  std::ostringstream os;
  for (int k = 0; k <= K; ++k) os << "P_" << k << " = " << entries[static_cast<std::size_t>(k)] << "\n";
  return os.str();
}

nlohmann::json NeretinTable::to_json() const {
  nlohmann::json e = nlohmann::json::array();
  for (int k = 0; k <= K; ++k) {
    const CoeffPoly& p = entries[static_cast<std::size_t>(k)];
    e.push_back({{"k", k}, {"poly", p.to_string()}, {"terms", p.to_json()}});
  }
  return {{"K", K}, {"N", N}, {"entries", e}};
}

NeretinTable neretin_table(int K, int N) {
  if (K < 0) throw DomainError("neretin_table: need K >= 0");
  if (N < 0) N = K;
  if (N < K) throw TruncationError("neretin_table: coordinate cutoff N must be >= K");
  // P_k only involves u_1..u_k, so f may be cut at z^{K+1}; the extra orders
  // absorb the three derivatives of the Schwarzian.
  const TruncSeries<CoeffPoly> f = build_f(N, K + 3);
  const TruncSeries<CoeffPoly> s = schwarzian(revert(f)).shift(2);
  NeretinTable table{K, N, {}};
  for (int k = 0; k <= K; ++k) table.entries.push_back(s.coeff(k).with_cutoff(N));
  return table;
}

ContourPairing<CoeffPoly> pair_contour_interior(int n, const NeretinTable& table) {
  if (n > 0 || -n > table.K) {
    throw DomainError("pair_contour: interior side needs -K <= n <= 0 (n=" + std::to_string(n) +
                      ", K=" + std::to_string(table.K) + ")");
  }
  // S[f^{-1}](z) = sum_k P_k z^{k-2}.
  const TruncSeries<CoeffPoly> s = TruncSeries<CoeffPoly>(0, table.entries, table.K).shift(-2);
  const TruncSeries<CoeffPoly> field =
      TruncSeries<CoeffPoly>::monomial(CoeffPoly(GaussianRational(-1), table.N), n + 1, table.K + 2);
  const CoeffPoly residue = (field * s).coeff(-1);
  const CoeffPoly third = residue * GaussianRational(Rational(1, 3));
  return {third, third * GaussianRational::i()};
}

}  // namespace loopvir
