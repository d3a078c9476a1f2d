#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "loopvir/scalar.hpp"

namespace loopvir {

/// A variable of the coordinate algebra: Lambda (the conformal radius
/// e^{rho_0}), the formal central charge c, or a loop coordinate u_n.
class Var {
 public:
  static constexpr Var lambda() { return Var(0); }
  static constexpr Var central() { return Var(1); }
  static constexpr Var u(int n) { return Var(static_cast<std::uint16_t>(n + 1)); }

  constexpr std::uint16_t id() const { return id_; }
  constexpr bool is_lambda() const { return id_ == 0; }
  constexpr bool is_central() const { return id_ == 1; }
  constexpr bool is_u() const { return id_ >= 2; }
  /// n for u_n, 0 otherwise.
  constexpr int u_index() const { return is_u() ? id_ - 1 : 0; }

  /// "L", "c", "u3".
  std::string name() const;
  /// Inverse of name(); throws ParseError.
  static Var parse(std::string_view name);

  constexpr auto operator<=>(const Var&) const = default;

 private:
  constexpr explicit Var(std::uint16_t id) : id_(id) {}
  std::uint16_t id_;
};

struct VarPower {
  std::uint16_t var;
  std::int16_t exp;
  constexpr auto operator<=>(const VarPower&) const = default;
};

/// Sparse exponent vector, sorted by variable id, no zero exponents. Only
/// Lambda may carry a negative exponent.
using Monomial = boost::container::small_vector<VarPower, 6>;

int exponent_of(const Monomial& m, Var v);
Monomial multiply(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Bi-grading of a homogeneous polynomial: Lambda-degree and u-weight (u_n has
/// weight n; Lambda and c have weight 0).
struct Grading {
  int lambda_degree = 0;
  int u_weight = 0;
  friend Grading operator+(Grading a, Grading b) {
    return {a.lambda_degree + b.lambda_degree, a.u_weight + b.u_weight};
  }
  auto operator<=>(const Grading&) const = default;
};

template <class S>
using Assignment = std::map<Var, S>;

/// Sparse polynomial over Q(i) in Lambda^{+-1}, c and u_1..u_N.
///
/// The cutoff N is part of the value. A polynomial built without a cutoff
/// (a bare constant) is "unbound" and adopts the cutoff of whatever it is
/// combined with; two bound operands must agree.
class CoeffPoly {
 public:
  static constexpr int kUnbound = -1;
  using TermMap = std::map<Monomial, GaussianRational, MonomialLess>;

  CoeffPoly() = default;
  CoeffPoly(GaussianRational constant, int cutoff = kUnbound);  // NOLINT(google-explicit-constructor)
  CoeffPoly(long constant) : CoeffPoly(GaussianRational(constant)) {}  // NOLINT(google-explicit-constructor)

  static CoeffPoly lambda(int cutoff, int exponent = 1);
  static CoeffPoly central(int cutoff);
  /// u_n; throws CutoffMismatch when n > cutoff.
  static CoeffPoly u(int n, int cutoff);
  static CoeffPoly variable(Var v, int cutoff);
  static CoeffPoly monomial(GaussianRational coeff, Monomial m, int cutoff);

  int cutoff() const { return cutoff_; }
  /// Re-embeds into the ring with coordinate cutoff N (>= max_u_index()).
  CoeffPoly with_cutoff(int cutoff) const;

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  GaussianRational constant_term() const;
  /// Largest n with u_n present, 0 if none.
  int max_u_index() const;
  bool contains(Var v) const;

  CoeffPoly operator-() const;
  CoeffPoly& operator+=(const CoeffPoly& o);
  CoeffPoly& operator-=(const CoeffPoly& o);
  CoeffPoly& operator*=(const GaussianRational& s);
  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);
  friend CoeffPoly operator*(CoeffPoly a, const GaussianRational& s) { return a *= s; }
  friend CoeffPoly operator*(const GaussianRational& s, CoeffPoly a) { return a *= s; }
  CoeffPoly& operator*=(const CoeffPoly& o) { return *this = *this * o; }
  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) { return a.terms_ == b.terms_; }

  /// Integer power; negative exponents only for units (scalar * Lambda^j).
  CoeffPoly pow(int e) const;
  /// Inverse when this is a unit of the ring, i.e. nonzero scalar * Lambda^j.
  std::optional<CoeffPoly> try_inverse() const;
  /// Partial derivative with respect to one variable.
  CoeffPoly partial(Var v) const;
  /// Conjugates the coefficients (variables are left alone).
  CoeffPoly conj() const;
  /// Sets one variable to a constant (a nonzero one if it appears with a
  /// negative power).
  CoeffPoly substitute(Var v, const GaussianRational& value) const;

  template <class S>
  S eval(const Assignment<S>& assignment) const;

  /// Common grading of all terms; std::nullopt when inhomogeneous.
  /// Throws DomainError on the zero polynomial.
  std::optional<Grading> grading() const;

  /// Canonical text, e.g. "6*L^-2*(u1^2 - u2)".
  std::string to_string() const;
  /// [{"exponents": {"L": -2, "u1": 2}, "re": "6", "im": "0"}, ...]
  nlohmann::json to_json() const;

 private:
  void adopt_cutoff(const CoeffPoly& o);
  void check_monomial(const Monomial& m) const;

  TermMap terms_;
  int cutoff_ = kUnbound;
};

std::ostream& operator<<(std::ostream& os, const CoeffPoly& p);

/// Grading of p, std::nullopt when inhomogeneous; throws on zero.
std::optional<Grading> grading_of(const CoeffPoly& p);

template <class S>
S poly_eval(const CoeffPoly& p, const Assignment<S>& assignment) {
  return p.eval(assignment);
}

/// A derivation of the coordinate algebra, given by its images on the
/// generators. The image of c is always zero.
struct Derivation {
  CoeffPoly lambda_image;
  /// u_images[n-1] is the image of u_n.
  std::vector<CoeffPoly> u_images;

  int max_u() const { return static_cast<int>(u_images.size()); }
};

/// Leibniz extension of a derivation to an arbitrary polynomial. Throws
/// TruncationError when p mentions some u_m whose image is not provided.
CoeffPoly derivation_apply(const Derivation& d, const CoeffPoly& p);

template <>
struct ring_traits<CoeffPoly> {
  static constexpr bool exact = true;
  static CoeffPoly zero() { return {}; }
  static CoeffPoly one() { return CoeffPoly(1); }
  static bool is_zero(const CoeffPoly& x) { return x.is_zero(); }
  static bool is_one(const CoeffPoly& x) { return x == CoeffPoly(1); }
  static std::optional<CoeffPoly> try_inverse(const CoeffPoly& x) { return x.try_inverse(); }
  static CoeffPoly scale(const CoeffPoly& x, const Rational& q) { return x * GaussianRational(q); }
  static CoeffPoly conj(const CoeffPoly& x) { return x.conj(); }
  static std::string to_string(const CoeffPoly& x);
};

// ---------------------------------------------------------------------------

namespace detail {
template <class S>
S power(S base, long e) {
  S result = scalar_from<S>(GaussianRational(1));
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}
}  // namespace detail

template <class S>
S CoeffPoly::eval(const Assignment<S>& assignment) const {
  S total = scalar_from<S>(GaussianRational());
  for (const auto& [mono, coeff] : terms_) {
    S term = scalar_from<S>(coeff);
    for (const VarPower& vp : mono) {
      const Var v = vp.var == 0 ? Var::lambda() : (vp.var == 1 ? Var::central() : Var::u(vp.var - 1));
      auto it = assignment.find(v);
      if (it == assignment.end()) throw DomainError("poly_eval: unassigned variable " + v.name());
      const S& value = it->second;
      if (vp.exp < 0) {
        if (value == scalar_from<S>(GaussianRational())) {
          throw DomainError("poly_eval: negative power of " + v.name() + " at zero");
        }
        term /= detail::power(value, -vp.exp);
      } else {
        term *= detail::power(value, vp.exp);
      }
    }
    total += term;
  }
  return total;
}

}  // namespace loopvir
