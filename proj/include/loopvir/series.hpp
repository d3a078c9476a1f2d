#pragma once

#include <algorithm>
#include <cassert>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "loopvir/error.hpp"
#include "loopvir/scalar.hpp"

namespace loopvir {

/// Truncated Laurent series  sum_{m=v}^{M} a_m z^m + O(z^{M+1})  over a ring R.
///
/// The valuation v is computed (leading zeros are stripped). The order M is
/// the last exactly known power; every operation returns the largest order it
/// can prove. A series that is zero through its order has v = M + 1.
template <class R>
class TruncSeries {
 public:
  using traits = ring_traits<R>;

  TruncSeries() = default;

  /// Coefficients for z^start, z^{start+1}, ...; powers past the supplied
  /// coefficients (up to order) are zero.
  TruncSeries(int start, std::vector<R> coeffs, int order) : valuation_(start), order_(order), coeffs_(std::move(coeffs)) {
    if (valuation_ + static_cast<int>(coeffs_.size()) - 1 > order_) {
      coeffs_.resize(static_cast<std::size_t>(std::max(0, order_ - valuation_ + 1)));
    }
    normalize();
  }

  static TruncSeries zero(int order) { return TruncSeries(order + 1, {}, order); }
  static TruncSeries constant(R c, int order) { return TruncSeries(0, {std::move(c)}, order); }
  static TruncSeries monomial(R c, int power, int order) { return TruncSeries(power, {std::move(c)}, order); }
  /// The identity map z.
  static TruncSeries identity(int order) { return monomial(traits::one(), 1, order); }
  /// Exact polynomial a_0 + a_1 z + ... viewed to the given order.
  static TruncSeries from_polynomial(std::vector<R> coeffs, int order) { return TruncSeries(0, std::move(coeffs), order); }

  int valuation() const { return valuation_; }
  int order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<R>& coefficients() const { return coeffs_; }
  const R& leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of a series that is zero to its order");
    return coeffs_.front();
  }

  /// Coefficient of z^power; throws TruncationError past the order.
  R coeff(int power) const {
    if (power > order_) {
      throw TruncationError("coefficient of z^" + std::to_string(power) + " requested from a series known to order " +
                            std::to_string(order_));
    }
    if (power < valuation_ || power > last()) return traits::zero();
    return coeffs_[static_cast<std::size_t>(power - valuation_)];
  }

  TruncSeries truncate(int order) const {
    if (order >= order_) return *this;
    std::vector<R> c;
    for (int m = valuation_; m <= std::min(order, last()); ++m) c.push_back(coeffs_[static_cast<std::size_t>(m - valuation_)]);
    return TruncSeries(valuation_, std::move(c), order);
  }

  /// Multiplies by z^shift.
  TruncSeries shift(int s) const {
    TruncSeries out = *this;
    out.valuation_ += s;
    out.order_ += s;
    return out;
  }

  TruncSeries operator-() const {
    TruncSeries out = *this;
    for (R& c : out.coeffs_) c = -c;
    return out;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) { return add(a, b, false); }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return add(a, b, true); }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return multiply(a, b, a.order_ + b.order_ + 1); }
  friend TruncSeries operator*(TruncSeries a, const R& s) {
    for (R& c : a.coeffs_) c *= s;
    a.normalize();
    return a;
  }
  friend TruncSeries operator*(const R& s, TruncSeries a) { return std::move(a) * s; }
  friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) { return a * b.inverse(); }

  TruncSeries scaled(const Rational& q) const {
    TruncSeries out = *this;
    for (R& c : out.coeffs_) c = traits::scale(c, q);
    out.normalize();
    return out;
  }

  /// Product known through min(a.M + b.v, b.M + a.v), optionally capped.
  static TruncSeries multiply(const TruncSeries& a, const TruncSeries& b, int cap) {
    const int order = std::min({a.order_ + b.valuation_, b.order_ + a.valuation_, cap});
    const int start = a.valuation_ + b.valuation_;
    if (a.is_zero() || b.is_zero() || start > order) return zero(order);
    std::vector<R> c(static_cast<std::size_t>(order - start + 1), traits::zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (traits::is_zero(a.coeffs_[i])) continue;
      const int room = order - start - static_cast<int>(i);
      if (room < 0) break;
      const std::size_t jmax = std::min<std::size_t>(b.coeffs_.size(), static_cast<std::size_t>(room) + 1);
      for (std::size_t j = 0; j < jmax; ++j) {
        if (traits::is_zero(b.coeffs_[j])) continue;
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return TruncSeries(start, std::move(c), order);
  }

  /// Multiplicative inverse; the leading coefficient must be a unit of R.
  /// Result order is M - 2v.
  TruncSeries inverse() const {
    if (is_zero()) throw DomainError("inverse of a series that is zero to order " + std::to_string(order_));
    auto inv0 = traits::try_inverse(coeffs_.front());
    if (!inv0) {
      throw DomainError("series leading coefficient " + traits::to_string(coeffs_.front()) + " is not invertible");
    }
    const int precision = order_ - valuation_;
    std::vector<R> b;
    b.reserve(static_cast<std::size_t>(precision + 1));
    b.push_back(*inv0);
    for (int n = 1; n <= precision; ++n) {
      R acc = traits::zero();
      for (int j = 1; j <= n && j < static_cast<int>(coeffs_.size()); ++j) {
        if (traits::is_zero(coeffs_[static_cast<std::size_t>(j)])) continue;
        acc += coeffs_[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(n - j)];
      }
      b.push_back(-(acc * *inv0));
    }
    return TruncSeries(-valuation_, std::move(b), order_ - 2 * valuation_);
  }

  TruncSeries derivative() const {
    std::vector<R> c;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int m = valuation_ + static_cast<int>(i);
      c.push_back(traits::scale(coeffs_[i], Rational(m)));
    }
    return TruncSeries(valuation_ - 1, std::move(c), order_ - 1);
  }

  TruncSeries conj() const {
    TruncSeries out = *this;
    for (R& c : out.coeffs_) c = traits::conj(c);
    return out;
  }

  /// Exact agreement of the coefficients both series know.
  bool agrees_with(const TruncSeries& o) const { return agrees_with(o, std::min(order_, o.order_)); }
  bool agrees_with(const TruncSeries& o, int through) const {
    if (through > std::min(order_, o.order_)) return false;
    for (int m = std::min(valuation_, o.valuation_); m <= through; ++m) {
      if (!(coeff(m) == o.coeff(m))) return false;
    }
    return true;
  }

  /// "a_v*z^v + ... + O(z^{M+1})" in the given variable name.
  std::string to_string(const std::string& var = "z") const { return render(var, 1); }

  /// Same rendering with powers negated, for series in 1/var.
  std::string render(const std::string& var, int sign) const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (traits::is_zero(coeffs_[i])) continue;
      const int m = sign * (valuation_ + static_cast<int>(i));
      std::string c = traits::to_string(coeffs_[i]);
      if (c.find_first_of("+- ", 1) != std::string::npos) c = "(" + c + ")";
      const bool negative = c.front() == '-';
      if (negative) c.erase(0, 1);
      if (!out.empty()) {
        out += negative ? " - " : " + ";
      } else if (negative) {
        out += "-";
      }
      if (m == 0) {
        out += c;
      } else {
        out += (c == "1" ? "" : c + "*") + var + (m == 1 ? "" : "^" + std::to_string(m));
      }
    }
    if (!out.empty()) out += " + ";
    return out + "O(" + var + "^" + std::to_string(sign * (order_ + 1)) + ")";
  }

  nlohmann::json to_json() const {
    nlohmann::json c = nlohmann::json::array();
    for (const R& x : coeffs_) c.push_back(traits::to_string(x));
    return {{"valuation", valuation_}, {"order", order_}, {"coeffs", c}};
  }

 private:
  static TruncSeries add(const TruncSeries& a, const TruncSeries& b, bool subtract) {
    const int order = std::min(a.order_, b.order_);
    const int start = std::min(a.valuation_, b.valuation_);
    if (start > order) return zero(order);
    std::vector<R> c(static_cast<std::size_t>(order - start + 1), traits::zero());
    for (int m = a.valuation_; m <= std::min(order, a.last()); ++m) c[static_cast<std::size_t>(m - start)] = a.at(m);
    for (int m = b.valuation_; m <= std::min(order, b.last()); ++m) {
      if (subtract) {
        c[static_cast<std::size_t>(m - start)] -= b.at(m);
      } else {
        c[static_cast<std::size_t>(m - start)] += b.at(m);
      }
    }
    return TruncSeries(start, std::move(c), order);
  }

  int last() const { return valuation_ + static_cast<int>(coeffs_.size()) - 1; }
  const R& at(int m) const { return coeffs_[static_cast<std::size_t>(m - valuation_)]; }

  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && traits::is_zero(coeffs_[lead])) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = order_ + 1;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      valuation_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && traits::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  int valuation_ = 1;
  int order_ = 0;
  std::vector<R> coeffs_;
};

/// Integer power; negative exponents need an invertible leading coefficient.
template <class R>
TruncSeries<R> pow_int(const TruncSeries<R>& f, int e) {
  if (e < 0) return pow_int(f.inverse(), -e);
  TruncSeries<R> result = TruncSeries<R>::constant(ring_traits<R>::one(), f.order() - f.valuation() + e * f.valuation());
  TruncSeries<R> base = f;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

/// outer(inner(z)). inner must have valuation >= 1; a Laurent outer also
/// needs an invertible leading coefficient of inner.
template <class R>
TruncSeries<R> compose(const TruncSeries<R>& outer, const TruncSeries<R>& inner) {
  if (inner.is_zero() || inner.valuation() <= 0) {
    throw DomainError("compose: inner series needs valuation >= 1 when the outer series has a truncated tail");
  }
  const int w = inner.valuation();
  const int vo = outer.valuation();
  // The constant term of outer contributes exactly; every other power m
  // brings in inner^m, known through m*w + (inner.order() - w).
  int first = vo;
  if (first == 0) {
    first = 1;
    while (first <= outer.order() && ring_traits<R>::is_zero(outer.coeff(first))) ++first;
  }
  int order = w * (outer.order() + 1) - 1;
  if (first <= outer.order()) order = std::min(order, first * w + inner.order() - w);
  TruncSeries<R> result = TruncSeries<R>::zero(order);
  if (outer.is_zero()) return result;
  if (vo == 0) result = TruncSeries<R>::constant(outer.coeff(0), order);
  const int start = vo == 0 ? 1 : vo;
  TruncSeries<R> power = pow_int(inner, start).truncate(order);
  for (int m = start; m <= outer.order(); ++m) {
    if (m * w > order) break;
    const R& a = outer.coeff(m);
    if (!ring_traits<R>::is_zero(a)) result = result + power * a;
    power = TruncSeries<R>::multiply(power, inner, order);
  }
  return result.truncate(order);
}

/// p(inner(z)) for an exact polynomial p = sum coeffs[j] x^j; inner may have
/// any valuation >= 0.
template <class R>
TruncSeries<R> compose_polynomial(std::span<const R> coeffs, const TruncSeries<R>& inner) {
  if (inner.valuation() < 0) throw DomainError("compose_polynomial: inner series has a pole");
  TruncSeries<R> result = TruncSeries<R>::zero(inner.order());
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    result = result * inner + TruncSeries<R>::constant(coeffs[j], inner.order());
  }
  return result;
}

/// Compositional inverse of a series with valuation exactly 1, by Newton
/// iteration g <- g - (f(g) - z) / f'(g), doubling the precision each step.
template <class R>
TruncSeries<R> revert(const TruncSeries<R>& f) {
  using traits = ring_traits<R>;
  if (f.is_zero() || f.valuation() != 1) {
    throw DomainError("revert: series must have valuation exactly 1 (got " + std::to_string(f.valuation()) + ")");
  }
  auto inv1 = traits::try_inverse(f.leading());
  if (!inv1) throw DomainError("revert: leading coefficient " + traits::to_string(f.leading()) + " is not invertible");
  const int target = f.order();
  TruncSeries<R> g = TruncSeries<R>::monomial(*inv1, 1, 1);
  int precision = 1;
  while (precision < target) {
    const int next = std::min(2 * precision + 1, target);
    const TruncSeries<R> ft = f.truncate(next);
    // Extend g by zeros: the unknown tail is exactly what this step computes.
    const TruncSeries<R> ge(g.valuation(), g.coefficients(), next);
    const TruncSeries<R> residual = compose(ft, ge) - TruncSeries<R>::identity(next);
    const TruncSeries<R> slope = compose(ft.derivative(), ge);
    g = (ge - residual / slope).truncate(next);
    precision = next;
  }
  return g.truncate(target);
}

/// (1 + x)^p for a series with constant term exactly one, principal branch.
template <class R>
TruncSeries<R> rational_power(const TruncSeries<R>& f, const Rational& p) {
  using traits = ring_traits<R>;
  if (f.valuation() != 0 || !traits::is_one(f.leading())) {
    throw DomainError("rational_power: constant term must be 1");
  }
  const int order = f.order();
  std::vector<R> g;
  g.reserve(static_cast<std::size_t>(order + 1));
  g.push_back(traits::one());
  // f g' = p f' g, i.e. n g_n = sum_{j=1}^{n} ((p+1) j - n) f_j g_{n-j}.
  for (int n = 1; n <= order; ++n) {
    R acc = traits::zero();
    for (int j = 1; j <= n; ++j) {
      const R& fj = f.coeff(j);
      if (traits::is_zero(fj)) continue;
      const Rational w = (p + Rational(1)) * Rational(j) - Rational(n);
      if (w.is_zero()) continue;
      acc += traits::scale(fj * g[static_cast<std::size_t>(n - j)], w);
    }
    g.push_back(traits::scale(acc, Rational(1, n)));
  }
  return TruncSeries<R>(0, std::move(g), order);
}

/// S[f] = f'''/f' - (3/2) (f''/f')^2.
template <class R>
TruncSeries<R> schwarzian(const TruncSeries<R>& f) {
  const TruncSeries<R> d1 = f.derivative();
  const TruncSeries<R> d2 = d1.derivative();
  const TruncSeries<R> d3 = d2.derivative();
  const TruncSeries<R> inv = d1.inverse();
  const TruncSeries<R> q = d2 * inv;
  return d3 * inv - (q * q).scaled(Rational(3, 2));
}

/// Checks S[phi o psi] = S[phi] o psi * (psi')^2 + S[psi] through the order
/// both sides know.
template <class R>
bool schwarzian_chain_check(const TruncSeries<R>& phi, const TruncSeries<R>& psi) {
  const TruncSeries<R> lhs = schwarzian(compose(phi, psi));
  const TruncSeries<R> dpsi = psi.derivative();
  const TruncSeries<R> rhs = compose(schwarzian(phi), psi) * (dpsi * dpsi) + schwarzian(psi);
  return lhs.agrees_with(rhs);
}

/// Evaluates the known part of a complex series at a point.
inline Complex evaluate(const TruncSeries<Complex>& f, Complex x) {
  Complex total{};
  Complex power = std::pow(x, f.valuation());
  for (const Complex& c : f.coefficients()) {
    total += c * power;
    power *= x;
  }
  return total;
}

/// A series expanded at infinity, F(z) = inner(1/z), e.g. sum b_k z^{-k}.
template <class R>
struct SeriesAtInfinity {
  TruncSeries<R> inner;

  /// Coefficient of z^power.
  R coeff(int power) const { return inner.coeff(-power); }
  /// Leading power of z.
  int leading_power() const { return -inner.valuation(); }
  std::string to_string(const std::string& var = "z") const { return inner.render(var, -1); }
  nlohmann::json to_json() const {
    nlohmann::json j = inner.to_json();
    j["variable"] = "1/z";
    return j;
  }
};

}  // namespace loopvir
