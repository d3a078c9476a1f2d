#include "loopvir/loops.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace loopvir {

namespace {

template <class S>
constexpr bool is_exact = std::is_same_v<S, GaussianRational>;

template <class S>
S parse_scalar(std::string_view text) {
  if constexpr (is_exact<S>) {
    return GaussianRational::parse(text);
  } else {
    return parse_complex(text);
  }
}

template <class S>
std::string scalar_text(const S& x) {
  return ring_traits<S>::to_string(x);
}

/// |x|^2 < bound (exact for Gaussian rationals).
template <class S>
bool norm_below(const S& x, const Rational& bound) {
  if constexpr (is_exact<S>) {
    return x.norm() < bound;
  } else {
    return std::norm(x) < bound.to_double();
  }
}

template <class S>
bool real_positive(const S& x) {
  if constexpr (is_exact<S>) {
    return x.is_real() && x.re().sign() > 0;
  } else {
    return x.imag() == 0.0 && x.real() > 0.0;
  }
}

template <class S>
S norm_of(const S& x) {
  if constexpr (is_exact<S>) {
    return GaussianRational(x.norm());
  } else {
    return Complex(std::norm(x), 0.0);
  }
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("expected an integer, got '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class S>
void check_coefficients(Loop<S>& loop, CoefficientPolicy policy) {
  for (std::size_t i = 0; i < loop.u.size(); ++i) {
    const long bound = static_cast<long>(i) + 2;
    if (!norm_below(loop.u[i], Rational(bound * bound)) && !(norm_of(loop.u[i]) == norm_of(S(bound)))) {
      const std::string msg = "|u" + std::to_string(i + 1) + "| exceeds " + std::to_string(bound) +
                              ", which no loop attains; treating the data as formal";
      if (policy == CoefficientPolicy::reject) throw DomainError(msg);
      loop.warnings.push_back(msg);
    }
  }
}

}  // namespace

template <class S>
std::string Loop<S>::describe() const {
  std::ostringstream os;
  switch (kind) {
    case LoopKind::circle:
      os << "circle:" << scalar_text(center) << "," << scalar_text(radius);
      break;
    case LoopKind::perturbed_disk:
      os << "pdisk:" << scalar_text(eps) << "," << m;
      break;
    case LoopKind::interior_series:
      os << "iseries:" << scalar_text(lambda) << ";";
      for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << scalar_text(u[i]);
      break;
    case LoopKind::exterior_series:
      os << "exterior:" << (exterior ? exterior->to_string() : std::string("?"));
      break;
  }
  return os.str();
}

template <class S>
Loop<S> make_circle(const S& center, const S& radius) {
  if (!real_positive(radius)) throw DomainError("circle: radius must be real and positive");
  Loop<S> loop;
  loop.kind = LoopKind::circle;
  loop.center = center;
  loop.radius = radius;
  const S r2 = radius * radius;
  bool inside = false;
  if constexpr (is_exact<S>) {
    inside = center.norm() < r2.re();
  } else {
    inside = std::norm(center) < r2.real();
  }
  if (!inside) throw DomainError("circle: need |a| < r so the curve separates 0 and infinity");
  // f(z) = (r^2 - |a|^2) z / (r - conj(a) z) maps the disk onto D(a, r) with f(0) = 0.
  loop.lambda = radius - norm_of(center) / radius;
  return loop;
}

template <class S>
Loop<S> make_perturbed_disk(const S& eps, int m) {
  if (m < 2) throw DomainError("pdisk: need m >= 2");
  if (!norm_below(eps * scalar_from<S>(GaussianRational(m)), Rational(1))) {
    throw DomainError("pdisk: need |eps| m < 1 for z + eps z^m to be univalent");
  }
  Loop<S> loop;
  loop.kind = LoopKind::perturbed_disk;
  loop.eps = eps;
  loop.m = m;
  loop.lambda = ring_traits<S>::one();
  loop.u.assign(static_cast<std::size_t>(m - 1), ring_traits<S>::zero());
  loop.u.back() = eps;
  return loop;
}

template <class S>
Loop<S> make_interior_series(const S& lambda, std::vector<S> u, CoefficientPolicy policy) {
  if (!real_positive(lambda)) throw DomainError("iseries: Lambda must be real and positive");
  Loop<S> loop;
  loop.kind = LoopKind::interior_series;
  loop.lambda = lambda;
  loop.u = std::move(u);
  check_coefficients(loop, policy);
  return loop;
}

template <class S>
Loop<S> parse_loop(std::string_view spec, CoefficientPolicy policy) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("loop spec needs 'kind:args', got '" + std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (kind == "circle" || kind == "pdisk") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) throw ParseError(std::string(kind) + " takes two comma-separated arguments");
    if (kind == "circle") return make_circle(parse_scalar<S>(parts[0]), parse_scalar<S>(parts[1]));
    return make_perturbed_disk(parse_scalar<S>(parts[0]), parse_int(parts[1]));
  }
  if (kind == "iseries") {
    const auto halves = split(args, ';');
    if (halves.size() != 2) throw ParseError("iseries takes 'Lambda;u1,u2,...'");
    std::vector<S> u;
    if (!halves[1].empty()) {
      for (std::string_view p : split(halves[1], ',')) u.push_back(parse_scalar<S>(p));
    }
    return make_interior_series(parse_scalar<S>(halves[0]), std::move(u), policy);
  }
  throw ParseError("unknown loop kind '" + std::string(kind) + "' (expected circle, pdisk or iseries)");
}

template <class S>
std::vector<S> interior_coords(const Loop<S>& loop, int N) {
  if (!loop.has_interior()) throw DomainError("loop has no interior data");
  std::vector<S> out;
  if (loop.kind == LoopKind::circle) {
    const S ratio = ring_traits<S>::conj(loop.center) / loop.radius;
    S power = ring_traits<S>::one();
    for (int n = 1; n <= N; ++n) {
      power *= ratio;
      out.push_back(power);
    }
    return out;
  }
  for (int n = 1; n <= N; ++n) {
    out.push_back(n <= static_cast<int>(loop.u.size()) ? loop.u[static_cast<std::size_t>(n - 1)] : ring_traits<S>::zero());
  }
  return out;
}

template <class S>
TruncSeries<S> interior_map(const Loop<S>& loop, int order) {
  std::vector<S> c{ring_traits<S>::zero(), loop.lambda};
  for (const S& un : interior_coords(loop, order - 1)) c.push_back(loop.lambda * un);
  return TruncSeries<S>::from_polynomial(std::move(c), order);
}

template <class S>
Assignment<S> coordinate_assignment(const Loop<S>& loop, int N) {
  Assignment<S> a;
  a[Var::lambda()] = loop.lambda;
  const std::vector<S> u = interior_coords(loop, N);
  for (int n = 1; n <= N; ++n) a[Var::u(n)] = u[static_cast<std::size_t>(n - 1)];
  return a;
}

template <class S>
Loop<S> scale(const Loop<S>& loop, const S& factor) {
  if (!real_positive(factor)) throw DomainError("scale: factor must be real and positive");
  if (!loop.has_interior()) throw DomainError("scale: loop has no interior data");
  Loop<S> out = loop;
  out.lambda = loop.lambda * factor;
  if (loop.kind == LoopKind::circle) {
    out.center = loop.center * factor;
    out.radius = loop.radius * factor;
  } else if (loop.kind == LoopKind::perturbed_disk) {
    out.kind = LoopKind::interior_series;
  }
  return out;
}

template <class S>
std::vector<S> eval_P(const Loop<S>& loop, const NeretinTable& table) {
  const Assignment<S> a = coordinate_assignment(loop, std::max(table.K, 1));
  std::vector<S> out;
  for (const CoeffPoly& p : table.entries) out.push_back(p.eval(a));
  return out;
}

template <class S>
std::vector<S> eval_P(const Loop<S>& loop, int K) {
  if (!loop.has_interior()) throw DomainError("eval_P: loop has no interior data");
  return eval_P(loop, neretin_table(K));
}

template <class S>
Loop<S> tau_transform(const Loop<S>& loop, int order) {
  if (!loop.has_interior()) throw DomainError("tau_transform: loop has no interior data");
  const TruncSeries<S> finv = revert(interior_map(loop, order));
  Loop<S> out;
  out.kind = LoopKind::exterior_series;
  out.exterior = SeriesAtInfinity<S>{finv.conj()};
  return out;
}

template <class S>
std::vector<CheckRecord> pq_tau_check(const Loop<S>& loop, int K) {
  const std::vector<S> P = eval_P(loop, K);
  const Loop<S> image = tau_transform(loop, K + 1);
  const std::vector<S> Q = neretin_Q_from_exterior(*image.exterior, K);
  std::vector<CheckRecord> out;
  for (int k = 0; k <= K; ++k) {
    CheckRecord r;
    r.identity = "Q_k[tau gamma] = conj(P_k[gamma])";
    r.indices = {{"k", k}};
    r.target = loop.describe();
    const S& p = P[static_cast<std::size_t>(k)];
    const S diff = Q[static_cast<std::size_t>(k)] - ring_traits<S>::conj(p);
    if constexpr (is_exact<S>) {
      r.residual = diff.to_string();
      r.pass = diff.is_zero();
    } else {
      const double err = std::abs(diff) / std::max(1.0, std::abs(p));
      r.error = err;
      r.pass = err <= 1e-10;
      r.residual = format_complex(diff);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckRecord> bieberbach_check(const Loop<GaussianRational>& loop, int K) {
  const TruncSeries<GaussianRational> finv = revert(interior_map(loop, K + 1));
  const Rational lambda = loop.lambda.re();
  std::vector<CheckRecord> out;
  for (int k = 1; k <= K; ++k) {
    const GaussianRational v = loop.lambda * finv.coeff(k + 1);
    // |v_k| <= (k+1)(4/Lambda)^k  <=>  |v_k|^2 Lambda^{2k} <= (k+1)^2 16^k
    const Rational lhs = v.norm() * lambda.pow(2 * k);
    const Rational rhs = Rational((k + 1) * (k + 1)) * Rational(16).pow(k);
    CheckRecord r;
    r.identity = "|v_k| <= (k+1) (4/Lambda)^k";
    r.indices = {{"k", k}};
    r.target = loop.describe();
    r.pass = lhs <= rhs;
    r.residual = r.pass ? "0" : (lhs - rhs).to_string();
    r.error = std::sqrt(lhs.to_double() / rhs.to_double());
    if (loop.kind == LoopKind::interior_series) r.note = "formal interior data";
    out.push_back(std::move(r));
  }
  return out;
}

Loop<Complex> to_float(const Loop<GaussianRational>& loop) {
  Loop<Complex> out;
  out.kind = loop.kind;
  out.lambda = loop.lambda.to_complex();
  for (const GaussianRational& x : loop.u) out.u.push_back(x.to_complex());
  out.center = loop.center.to_complex();
  out.radius = loop.radius.to_complex();
  out.eps = loop.eps.to_complex();
  out.m = loop.m;
  if (loop.exterior) {
    std::vector<Complex> c;
    for (const GaussianRational& x : loop.exterior->inner.coefficients()) c.push_back(x.to_complex());
    out.exterior = SeriesAtInfinity<Complex>{TruncSeries<Complex>(loop.exterior->inner.valuation(), std::move(c),
                                                                  loop.exterior->inner.order())};
  }
  out.warnings = loop.warnings;
  return out;
}

namespace {

Loop<Complex> from_map(const TruncSeries<Complex>& g, int N) {
  Loop<Complex> out;
  out.kind = LoopKind::interior_series;
  out.lambda = g.coeff(1);
  for (int n = 1; n <= N; ++n) out.u.push_back(g.coeff(n + 1) / out.lambda);
  return out;
}

/// Solves f(alpha) = s by Newton's method from alpha = s / f'(0).
Complex invert_at(const TruncSeries<Complex>& f, Complex s) {
  const TruncSeries<Complex> df = f.derivative();
  Complex alpha = s / f.coeff(1);
  for (int it = 0; it < 100; ++it) {
    const Complex step = (evaluate(f, alpha) - s) / evaluate(df, alpha);
    alpha -= step;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(alpha))) break;
  }
  return alpha;
}

}  // namespace

Loop<Complex> flow_image(const Loop<Complex>& loop, int k, double t, FlowKind kind, int N) {
  if (!loop.has_interior()) throw DomainError("flow_image: loop has no interior data");
  if (k <= -2) {
    throw DomainError("flow_image: k <= -2 moves the loop in a way that needs a numeric conformal map; unsupported");
  }
  const Complex s = kind == FlowKind::phi ? Complex(t, 0.0) : Complex(0.0, t);
  if (k == 0) {
    Loop<Complex> out;
    out.kind = LoopKind::interior_series;
    out.lambda = loop.lambda;
    out.u = interior_coords(loop, N);
    if (kind == FlowKind::phi) {
      out.lambda *= std::exp(-t);
    } else {
      // e^{-it} f(e^{it} z) restores f'(0) > 0.
      for (int n = 1; n <= N; ++n) out.u[static_cast<std::size_t>(n - 1)] *= std::exp(Complex(0.0, n * t));
    }
    return out;
  }
  if (k >= 1) {
    if (std::abs(s) * k >= 1.0) throw DomainError("flow_image: |k t| must be < 1");
    const TruncSeries<Complex> f = interior_map(loop, N + 1);
    return from_map(compose(flow_series(k, Complex(t, 0.0), kind, N + 1), f), N);
  }
  // k = -1: the flow is the translation z - s; renormalize with the disk
  // automorphism m(z) = (e^{i theta} z + alpha) / (1 + conj(alpha) e^{i theta} z), f(alpha) = s.
  const int terms = loop.kind == LoopKind::circle ? N + 80 : std::max<int>(N + 1, static_cast<int>(loop.u.size()) + 1);
  const TruncSeries<Complex> f = interior_map(loop, terms);
  const Complex alpha = invert_at(f, s);
  if (std::abs(alpha) >= 1.0) throw DomainError("flow_image: renormalization point left the unit disk");
  const Complex d = evaluate(f.derivative(), alpha);
  const Complex rot = std::conj(d) / std::abs(d);
  const TruncSeries<Complex> num = TruncSeries<Complex>::from_polynomial({alpha, rot}, N + 1);
  const TruncSeries<Complex> den = TruncSeries<Complex>::from_polynomial({1.0, std::conj(alpha) * rot}, N + 1);
  const TruncSeries<Complex> mz = num * den.inverse();
  std::vector<Complex> fc(static_cast<std::size_t>(terms) + 1, Complex{});
  for (int j = 1; j <= terms; ++j) fc[static_cast<std::size_t>(j)] = f.coeff(j);
  const TruncSeries<Complex> g = compose_polynomial<Complex>(fc, mz);
  // The constant term is f(alpha) - s, zero up to rounding.
  std::vector<Complex> gc;
  for (int j = 1; j <= N + 1; ++j) gc.push_back(g.coeff(j));
  return from_map(TruncSeries<Complex>(1, std::move(gc), N + 1), N);
}

Complex finite_difference_generator(const Loop<Complex>& loop, int k, Var target) {
  if (!target.is_lambda() && !target.is_u()) throw DomainError("finite_difference_generator: target must be Lambda or u_n");
  const int N = std::max(target.u_index(), 1);
  auto coordinate = [&](const Loop<Complex>& l) -> Complex {
    return target.is_lambda() ? l.lambda : l.u[static_cast<std::size_t>(target.u_index() - 1)];
  };
  auto central = [&](FlowKind kind, double h) {
    return (coordinate(flow_image(loop, k, h, kind, N)) - coordinate(flow_image(loop, k, -h, kind, N))) / (2.0 * h);
  };
  auto richardson = [&](FlowKind kind) {
    constexpr double h1 = 1e-4;
    constexpr double h2 = 1e-5;
    return (100.0 * central(kind, h2) - central(kind, h1)) / 99.0;
  };
  return 0.5 * (richardson(FlowKind::phi) - Complex(0.0, 1.0) * richardson(FlowKind::psi));
}

#define LOOPVIR_INSTANTIATE(S)                                                                   \
  template struct Loop<S>;                                                                      \
  template Loop<S> make_circle(const S&, const S&);                                             \
  template Loop<S> make_perturbed_disk(const S&, int);                                          \
  template Loop<S> make_interior_series(const S&, std::vector<S>, CoefficientPolicy);           \
  template Loop<S> parse_loop(std::string_view, CoefficientPolicy);                             \
  template std::vector<S> interior_coords(const Loop<S>&, int);                                 \
  template TruncSeries<S> interior_map(const Loop<S>&, int);                                    \
  template Assignment<S> coordinate_assignment(const Loop<S>&, int);                            \
  template Loop<S> scale(const Loop<S>&, const S&);                                             \
  template std::vector<S> eval_P(const Loop<S>&, int);                                          \
  template std::vector<S> eval_P(const Loop<S>&, const NeretinTable&);                          \
  template Loop<S> tau_transform(const Loop<S>&, int);                                          \
  template std::vector<CheckRecord> pq_tau_check(const Loop<S>&, int);

LOOPVIR_INSTANTIATE(GaussianRational)
LOOPVIR_INSTANTIATE(Complex)

#undef LOOPVIR_INSTANTIATE

}  // namespace loopvir
