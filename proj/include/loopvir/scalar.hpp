#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

#include "loopvir/error.hpp"

namespace loopvir {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class v);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  /// Throws DomainError for zero.
  Rational inverse() const;
  std::optional<Rational> try_inverse() const;
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational pow(long e) const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;
  /// Accepts "p", "p/q", and finite decimals such as "-0.125" (converted exactly).
  static Rational parse(std::string_view text);

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact complex number re + im*i over the rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long re) : re_(re) {}                 // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_one() const { return im_.is_zero() && re_ == Rational(1); }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |x|^2 = re^2 + im^2.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;
  std::optional<GaussianRational> try_inverse() const;
  GaussianRational pow(long e) const;
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "p/q" when real, "r/s*i" when purely imaginary, "p/q+r/s*i" otherwise.
  std::string to_string() const;
  /// Inverse of to_string; also accepts a bare "i", "-i" and decimals.
  static GaussianRational parse(std::string_view text);

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

using Complex = std::complex<double>;

/// Central charge of the SLE_kappa loop measure, (6-kappa)(3kappa-8)/(2kappa).
Rational central_charge(const Rational& kappa);

/// Ring contract shared by the series kernel: every coefficient ring used in
/// TruncSeries provides a specialization.
template <class R>
struct ring_traits;

template <>
struct ring_traits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool is_one(const Rational& x) { return x == Rational(1); }
  static std::optional<Rational> try_inverse(const Rational& x) { return x.try_inverse(); }
  static Rational scale(const Rational& x, const Rational& q) { return x * q; }
  static Rational conj(const Rational& x) { return x; }
  static std::string to_string(const Rational& x) { return x.to_string(); }
};

template <>
struct ring_traits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static bool is_one(const GaussianRational& x) { return x.is_one(); }
  static std::optional<GaussianRational> try_inverse(const GaussianRational& x) { return x.try_inverse(); }
  static GaussianRational scale(const GaussianRational& x, const Rational& q) {
    return {x.re() * q, x.im() * q};
  }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static std::string to_string(const GaussianRational& x) { return x.to_string(); }
};

template <>
struct ring_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  // Exact zero test: used only for valuation bookkeeping, never for verification.
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static bool is_one(const Complex& x) { return std::abs(x - Complex(1.0, 0.0)) <= 1e-12; }
  static std::optional<Complex> try_inverse(const Complex& x) {
    if (is_zero(x)) return std::nullopt;
    return Complex(1.0, 0.0) / x;
  }
  static Complex scale(const Complex& x, const Rational& q) { return x * q.to_double(); }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static std::string to_string(const Complex& x);
};

/// Formats a complex double with 15 significant digits, "a+bi" style.
std::string format_complex(const Complex& x);
/// Parses "a", "a+bi", "a-b*i", "bi", "i"; components may be fractions.
Complex parse_complex(std::string_view text);

/// Lifts an exact scalar into another scalar type.
template <class S>
S scalar_from(const GaussianRational& x) {
  if constexpr (std::is_same_v<S, Complex>) {
    return x.to_complex();
  } else {
    return S(x);
  }
}

}  // namespace loopvir
