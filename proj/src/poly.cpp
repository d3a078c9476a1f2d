#include "loopvir/poly.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace loopvir {

namespace {

Var var_of(std::uint16_t id) {
  if (id == 0) return Var::lambda();
  if (id == 1) return Var::central();
  return Var::u(id - 1);
}

mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Printing order: graded (u and c degree) descending, then lexicographic on
// exponents in variable-id order, higher exponents of earlier variables first.
int print_degree(const Monomial& m) {
  int d = 0;
  for (const VarPower& vp : m) {
    if (vp.var != 0) d += vp.exp;
  }
  return d;
}

bool print_before(const Monomial& a, const Monomial& b) {
  const int da = print_degree(a), db = print_degree(b);
  if (da != db) return da > db;
  // Compare exponent vectors over u and c first (by id ascending), Lambda last.
  auto exp_at = [](const Monomial& m, std::uint16_t id) {
    for (const VarPower& vp : m) {
      if (vp.var == id) return static_cast<int>(vp.exp);
    }
    return 0;
  };
  std::uint16_t max_id = 0;
  for (const VarPower& vp : a) max_id = std::max(max_id, vp.var);
  for (const VarPower& vp : b) max_id = std::max(max_id, vp.var);
  for (std::uint16_t id = 2; id <= max_id; ++id) {
    const int ea = exp_at(a, id), eb = exp_at(b, id);
    if (ea != eb) return ea > eb;
  }
  if (int ea = exp_at(a, 1), eb = exp_at(b, 1); ea != eb) return ea > eb;
  return exp_at(a, 0) > exp_at(b, 0);
}

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (const VarPower& vp : m) {
    if (!out.empty()) out += "*";
    out += var_of(vp.var).name();
    if (vp.exp != 1) out += "^" + std::to_string(vp.exp);
  }
  return out;
}

// Appends "coeff*monomial" as a signed summand; first says whether this is
// the leading summand of the sum.
void append_term(std::string& out, const GaussianRational& c, const Monomial& m, bool first) {
  const std::string mono = monomial_text(m);
  if (c.is_real()) {
    const bool neg = c.re().sign() < 0;
    const Rational mag = c.re().abs();
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mono.empty()) {
      out += mag.to_string();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
    return;
  }
  if (!first) out += " + ";
  out += "(" + c.to_string() + ")";
  if (!mono.empty()) out += "*" + mono;
}

}  // namespace

std::string Var::name() const {
  if (is_lambda()) return "L";
  if (is_central()) return "c";
  return "u" + std::to_string(u_index());
}

Var Var::parse(std::string_view name) {
  if (name == "L" || name == "Lambda") return lambda();
  if (name == "c") return central();
  if (name.size() >= 2 && name.front() == 'u') {
    int n = 0;
    for (char ch : name.substr(1)) {
      if (ch < '0' || ch > '9') throw ParseError("unknown variable '" + std::string(name) + "'");
      n = n * 10 + (ch - '0');
    }
    if (n >= 1) return u(n);
  }
  throw ParseError("unknown variable '" + std::string(name) + "'");
}

int exponent_of(const Monomial& m, Var v) {
  for (const VarPower& vp : m) {
    if (vp.var == v.id()) return vp.exp;
  }
  return 0;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->var < ib->var)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->var < ia->var) {
      out.push_back(*ib++);
    } else {
      const int e = ia->exp + ib->exp;
      if (e != 0) out.push_back({ia->var, static_cast<std::int16_t>(e)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

CoeffPoly::CoeffPoly(GaussianRational constant, int cutoff) : cutoff_(cutoff) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, std::move(constant));
}

CoeffPoly CoeffPoly::lambda(int cutoff, int exponent) {
  CoeffPoly p;
  p.cutoff_ = cutoff;
  Monomial m;
  if (exponent != 0) m.push_back({Var::lambda().id(), static_cast<std::int16_t>(exponent)});
  p.terms_.emplace(std::move(m), GaussianRational(1));
  return p;
}

CoeffPoly CoeffPoly::central(int cutoff) { return variable(Var::central(), cutoff); }

CoeffPoly CoeffPoly::u(int n, int cutoff) {
  if (n < 1) throw DomainError("u_n needs n >= 1");
  return variable(Var::u(n), cutoff);
}

CoeffPoly CoeffPoly::variable(Var v, int cutoff) {
  return monomial(GaussianRational(1), Monomial{{v.id(), 1}}, cutoff);
}

CoeffPoly CoeffPoly::monomial(GaussianRational coeff, Monomial m, int cutoff) {
  CoeffPoly p;
  p.cutoff_ = cutoff;
  p.check_monomial(m);
  if (!coeff.is_zero()) p.terms_.emplace(std::move(m), std::move(coeff));
  return p;
}

void CoeffPoly::check_monomial(const Monomial& m) const {
  for (const VarPower& vp : m) {
    if (vp.var != 0 && vp.exp < 0) {
      throw DomainError("negative power of " + var_of(vp.var).name() + " is not allowed");
    }
    if (vp.var >= 2 && cutoff_ != kUnbound && vp.var - 1 > cutoff_) {
      throw CutoffMismatch("u" + std::to_string(vp.var - 1) + " exceeds coordinate cutoff N=" +
                           std::to_string(cutoff_));
    }
  }
}

CoeffPoly CoeffPoly::with_cutoff(int cutoff) const {
  if (max_u_index() > cutoff) {
    throw CutoffMismatch("cannot embed a polynomial in u" + std::to_string(max_u_index()) +
                         " into cutoff N=" + std::to_string(cutoff));
  }
  CoeffPoly p = *this;
  p.cutoff_ = cutoff;
  return p;
}

bool CoeffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussianRational CoeffPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? GaussianRational() : it->second;
}

int CoeffPoly::max_u_index() const {
  int n = 0;
  for (const auto& [m, c] : terms_) {
    if (!m.empty() && m.back().var >= 2) n = std::max(n, m.back().var - 1);
  }
  return n;
}

bool CoeffPoly::contains(Var v) const {
  for (const auto& [m, c] : terms_) {
    if (exponent_of(m, v) != 0) return true;
  }
  return false;
}

void CoeffPoly::adopt_cutoff(const CoeffPoly& o) {
  if (o.cutoff_ == kUnbound || o.cutoff_ == cutoff_) return;
  if (cutoff_ == kUnbound) {
    if (max_u_index() > o.cutoff_) {
      throw CutoffMismatch("operand uses u" + std::to_string(max_u_index()) + " beyond cutoff N=" +
                           std::to_string(o.cutoff_));
    }
    cutoff_ = o.cutoff_;
    return;
  }
  throw CutoffMismatch("coordinate cutoff mismatch: N=" + std::to_string(cutoff_) +
                       " vs N=" + std::to_string(o.cutoff_));
}

CoeffPoly CoeffPoly::operator-() const {
  CoeffPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& o) {
  adopt_cutoff(o);
  if (o.cutoff_ == kUnbound && cutoff_ != kUnbound) {
    for (const auto& [m, c] : o.terms_) check_monomial(m);
  }
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& o) {
  adopt_cutoff(o);
  if (o.cutoff_ == kUnbound && cutoff_ != kUnbound) {
    for (const auto& [m, c] : o.terms_) check_monomial(m);
  }
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

CoeffPoly& CoeffPoly::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
  CoeffPoly out;
  out.cutoff_ = a.cutoff_;
  out.adopt_cutoff(b);
  if (a.is_zero() || b.is_zero()) return out;
  if (out.cutoff_ != CoeffPoly::kUnbound) {
    const int limit = out.cutoff_;
    if (a.max_u_index() > limit || b.max_u_index() > limit) {
      throw CutoffMismatch("operand exceeds coordinate cutoff N=" + std::to_string(limit));
    }
  }
  GaussianRational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca;
      prod *= cb;
      auto [it, inserted] = out.terms_.try_emplace(multiply(ma, mb), prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::optional<CoeffPoly> CoeffPoly::try_inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (!(m.empty() || (m.size() == 1 && m.front().var == 0))) return std::nullopt;
  Monomial inv;
  if (!m.empty()) inv.push_back({0, static_cast<std::int16_t>(-m.front().exp)});
  return monomial(c.inverse(), std::move(inv), cutoff_);
}

CoeffPoly CoeffPoly::pow(int e) const {
  if (e < 0) {
    auto inv = try_inverse();
    if (!inv) throw DomainError("negative power of a non-unit polynomial " + to_string());
    return inv->pow(-e);
  }
  CoeffPoly result(GaussianRational(1), cutoff_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

CoeffPoly CoeffPoly::partial(Var v) const {
  CoeffPoly out;
  out.cutoff_ = cutoff_;
  for (const auto& [m, c] : terms_) {
    const int e = exponent_of(m, v);
    if (e == 0) continue;
    Monomial reduced;
    for (const VarPower& vp : m) {
      if (vp.var != v.id()) {
        reduced.push_back(vp);
      } else if (vp.exp != 1) {
        reduced.push_back({vp.var, static_cast<std::int16_t>(vp.exp - 1)});
      }
    }
    GaussianRational coeff = c * GaussianRational(e);
    auto [it, inserted] = out.terms_.try_emplace(std::move(reduced), coeff);
    if (!inserted) it->second += coeff;
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

CoeffPoly CoeffPoly::substitute(Var v, const GaussianRational& value) const {
  CoeffPoly out;
  out.cutoff_ = cutoff_;
  for (const auto& [m, c] : terms_) {
    const int e = exponent_of(m, v);
    Monomial reduced;
    for (const VarPower& vp : m) {
      if (vp.var != v.id()) reduced.push_back(vp);
    }
    GaussianRational coeff = c;
    if (e > 0) coeff *= value.pow(e);
    if (e < 0) coeff *= value.inverse().pow(-e);
    auto [it, inserted] = out.terms_.try_emplace(std::move(reduced), coeff);
    if (!inserted) it->second += coeff;
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

CoeffPoly CoeffPoly::conj() const {
  CoeffPoly p = *this;
  for (auto& [m, c] : p.terms_) c = c.conj();
  return p;
}

std::optional<Grading> CoeffPoly::grading() const {
  if (is_zero()) throw DomainError("grading of the zero polynomial is undefined");
  std::optional<Grading> common;
  for (const auto& [m, c] : terms_) {
    Grading g;
    for (const VarPower& vp : m) {
      if (vp.var == 0) g.lambda_degree += vp.exp;
      if (vp.var >= 2) g.u_weight += (vp.var - 1) * vp.exp;
    }
    if (!common) {
      common = g;
    } else if (*common != g) {
      return std::nullopt;
    }
  }
  return common;
}

std::optional<Grading> grading_of(const CoeffPoly& p) { return p.grading(); }

std::string CoeffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, GaussianRational>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return print_before(a.first, b.first); });
  if (items.size() == 1) {
    std::string out;
    append_term(out, items.front().second, items.front().first, true);
    return out;
  }

  // Common monomial factor: u and c to their minimum exponent, Lambda only
  // when every term carries it with the same sign.
  Monomial common;
  {
    std::map<std::uint16_t, int> lo;
    for (const VarPower& vp : items.front().first) lo[vp.var] = vp.exp;
    for (auto& [id, e] : lo) {
      for (const auto& [m, c] : items) {
        const int em = exponent_of(m, var_of(id));
        if (id == 0) {
          if ((em > 0) != (e > 0) || em == 0) {
            e = 0;
            break;
          }
          if (std::abs(em) < std::abs(e)) e = em;
        } else {
          e = std::min(e, em);
        }
      }
      if (e != 0) common.push_back({id, static_cast<std::int16_t>(e)});
    }
  }
  // Rational content, signed after the first printed term.
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : items) {
    for (const Rational* part : {&c.re(), &c.im()}) {
      if (part->is_zero()) continue;
      num_gcd = gcd_z(num_gcd, part->numerator());
      den_lcm = lcm_z(den_lcm, part->denominator());
    }
  }
  Rational content(num_gcd, den_lcm);
  const GaussianRational& lead = items.front().second;
  if ((lead.re().is_zero() ? lead.im().sign() : lead.re().sign()) < 0) content = -content;

  Monomial inv_common;
  for (const VarPower& vp : common) inv_common.push_back({vp.var, static_cast<std::int16_t>(-vp.exp)});
  std::string body;
  bool first = true;
  for (const auto& [m, c] : items) {
    append_term(body, c / GaussianRational(content), multiply(m, inv_common), first);
    first = false;
  }

  std::string prefix;
  const std::string mono = monomial_text(common);
  if (content == Rational(1)) {
    prefix = mono.empty() ? "" : mono + "*";
  } else if (content == Rational(-1)) {
    prefix = mono.empty() ? "-" : "-" + mono + "*";
  } else {
    prefix = content.to_string() + "*" + (mono.empty() ? "" : mono + "*");
  }
  if (prefix.empty()) return body;
  return prefix + "(" + body + ")";
}

nlohmann::json CoeffPoly::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json exps = nlohmann::json::object();
    for (const VarPower& vp : m) exps[var_of(vp.var).name()] = vp.exp;
    out.push_back({{"exponents", exps}, {"re", c.re().to_string()}, {"im", c.im().to_string()}});
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const CoeffPoly& p) { return os << p.to_string(); }

std::string ring_traits<CoeffPoly>::to_string(const CoeffPoly& x) { return x.to_string(); }

CoeffPoly derivation_apply(const Derivation& d, const CoeffPoly& p) {
  CoeffPoly out;
  if (p.is_zero()) return out;
  if (p.max_u_index() > d.max_u()) {
    throw TruncationError("insufficient truncation: derivation has images for u1..u" +
                          std::to_string(d.max_u()) + " but the argument uses u" +
                          std::to_string(p.max_u_index()));
  }
  if (p.contains(Var::lambda())) out += p.partial(Var::lambda()) * d.lambda_image;
  for (int n = 1; n <= p.max_u_index(); ++n) {
    if (!p.contains(Var::u(n))) continue;
    out += p.partial(Var::u(n)) * d.u_images[n - 1];
  }
  return out;
}

}  // namespace loopvir
