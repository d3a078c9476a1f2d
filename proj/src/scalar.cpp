#include "loopvir/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace loopvir {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed rational: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

// Position of the sign separating real and imaginary parts, or npos.
std::size_t split_point(const std::string& s) {
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') return p;
  }
  return std::string::npos;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(1 / v_));
}

std::optional<Rational> Rational::try_inverse() const {
  if (is_zero()) return std::nullopt;
  return inverse();
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return Rational(parse_integer(std::string_view(s).substr(0, slash), s),
                    parse_integer(std::string_view(s).substr(slash + 1), s));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string_view head = std::string_view(s).substr(0, dot);
    std::string_view frac = std::string_view(s).substr(dot + 1);
    const bool neg = !head.empty() && head.front() == '-';
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) head.remove_prefix(1);
    if ((!head.empty() && !all_digits(head)) || (!frac.empty() && !all_digits(frac)) ||
        (head.empty() && frac.empty())) {
      throw ParseError("malformed decimal: '" + s + "'");
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    mpz_class num(std::string(head.empty() ? "0" : head) + std::string(frac), 10);
    return Rational(neg ? mpz_class(-num) : num, den);
  }
  return Rational(parse_integer(s, s), mpz_class(1));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (!o.im_.is_zero()) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (!o.im_.is_zero()) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  const Rational n = norm();
  return {re_ / n, -im_ / n};
}

std::optional<GaussianRational> GaussianRational::try_inverse() const {
  if (is_zero()) return std::nullopt;
  return inverse();
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_real()) {
    if (o.re_.is_zero()) throw DomainError("division by zero");
    re_ /= o.re_;
    if (!im_.is_zero()) im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  GaussianRational result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  std::string im = im_.to_string() + "*i";
  if (re_.is_zero()) return im;
  return re_.to_string() + (im_.sign() > 0 ? "+" : "") + im;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return {Rational::parse(s), Rational(0)};
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  const std::size_t p = split_point(s);
  std::string re_part = p == std::string::npos ? "" : s.substr(0, p);
  std::string im_part = p == std::string::npos ? s : s.substr(p);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (!im_part.empty() && im_part.front() == '+') im_part.erase(0, 1);
  return {re_part.empty() ? Rational(0) : Rational::parse(re_part), Rational::parse(im_part)};
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

Rational central_charge(const Rational& kappa) {
  if (kappa.is_zero()) throw DomainError("central_charge: kappa must be nonzero");
  if (kappa.sign() < 0) throw DomainError("central_charge: kappa must be positive");
  return (Rational(6) - kappa) * (Rational(3) * kappa - Rational(8)) / (Rational(2) * kappa);
}

std::string format_complex(const Complex& x) {
  char buf[96];
  if (x.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.15g", x.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", x.real(), x.imag());
  }
  return buf;
}

std::string ring_traits<Complex>::to_string(const Complex& x) { return format_complex(x); }

namespace {

double parse_real(const std::string& s) {
  if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed number: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("malformed number: '" + s + "'");
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s = strip(text);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return {parse_real(s), 0.0};
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  const std::size_t p = split_point(s);
  std::string re_part = p == std::string::npos ? "" : s.substr(0, p);
  std::string im_part = p == std::string::npos ? s : s.substr(p);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (im_part.front() == '+') im_part.erase(0, 1);
  return {re_part.empty() ? 0.0 : parse_real(re_part), parse_real(im_part)};
}

}  // namespace loopvir
