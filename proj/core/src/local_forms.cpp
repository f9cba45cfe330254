#include "symtwo/local_forms.hpp"

#include <cmath>
#include <numbers>

#include "symtwo/error.hpp"

namespace symtwo {

namespace {

// 1 + z1^m z2
Series2 contact_factor(int m, Backend be, int precision) {
  return Series2::monomial(Scalar::one(be), m, 1, precision).plus_constant(Scalar::one(be));
}

bool is_integer(const Scalar& x, long* out) {
  if (x.is_exact()) {
    auto n = x.as_integer();
    if (n && out) *out = *n;
    return n.has_value();
  }
  std::complex<double> z = x.to_complex();
  double tau = tolerance();
  if (std::abs(z.imag()) > tau) return false;
  double r = std::round(z.real());
  if (std::abs(z.real() - r) > tau * std::max(1.0, std::abs(z.real()))) return false;
  if (out) *out = static_cast<long>(r);
  return true;
}

// Best continued-fraction convergent p/q of x with q <= bound that lies
// within tol of x.
std::optional<std::pair<long, long>> reconstruct_rational(double x, double tol, long bound) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<long>(a);
    long p2 = ai * p1 + p0;
    long q2 = ai * q1 + q0;
    if (q2 > bound) break;
    if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= tol) return std::pair{p2, q2};
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

int order_of_contact(const Series2& r) {
  if (r.is_zero() || ord_along_axis(r, Var::z1) != 1) {
    throw Error(ErrorKind::not_a_leaf_presentation, "r must vanish to order exactly 1 along z1 = 0");
  }
  return ord_along_axis(r.derivative(Var::z2), Var::z1) - 1;
}

NormalFormData lemma25_chart(const Series2& h, const Series2& r) {
  Backend be = r.backend();
  int m = order_of_contact(r);
  Series2 u = r.shifted_z1(-1).trimmed();
  if (u.low() < 0 || !u.is_unit()) throw Error(ErrorKind::not_a_leaf_presentation, "r / z1 is not a unit");
  int n = u.precision();

  Series1 s(be, 0, n);
  for (int i = 0; i <= n; ++i) s.set(i, u.coeff(i, 0));
  Series1 t(be, 0, n - m);
  for (int j = 1; j <= n - m; ++j) t.set(j, u.coeff(m, j));
  if (n - m < 1 || t.coeff(1).is_zero()) {
    throw Error(ErrorKind::degenerate_base_point,
                "t'(0) = 0 at this base point; retry with a nonzero base_shift along z2");
  }

  Series2 S = Series2::embed(s, Var::z1);
  Series2 T = Series2::embed(t, Var::z2);
  Series2 rest = u - S - T.shifted_z1(m);
  Series2 gcorr = rest.shifted_z1(-(m + 1)).trimmed();
  if (gcorr.low() < 0) {
    throw Error(ErrorKind::precision_exhausted, "contact-order decomposition left a pole; raise the truncation");
  }

  CoordMap chart(S.shifted_z1(1), (T + gcorr.shifted_z1(1)) * pow(S, -static_cast<long>(m + 1)));
  Series2 model = Series2::variable(Var::z1, be, n + 2) * contact_factor(m, be, n + 2);
  bool verified = chart.apply(model).equals(r);

  Series2 jac = S + Series2::embed(s.derivative(), Var::z1).shifted_z1(1);
  Series2 fout = h * reciprocal(jac);
  Series2 fout_z = reverse_map(chart).apply(fout);
  return {m, std::move(s), std::move(t), std::move(gcorr), std::move(chart), std::move(fout), std::move(fout_z),
          verified};
}

NormalFormData lemma25_chart(const ProductForm& w, int truncation, Backend backend, const expr::Expr& base_shift) {
  using expr::Expr;
  Expr shifted_z2(std::make_shared<expr::Node>(
      expr::Node{expr::Binary{'+', std::make_shared<expr::Node>(expr::Node{expr::Variable{Var::z2}}), base_shift.ptr()}}));
  auto shifted = [&](const Expr& e) { return expr::substitute(e, Var::z2, shifted_z2); };

  Series2 h = expr::eval(shifted(w.scale), truncation, backend);
  Series2 u = expr::eval(shifted(w.u), truncation + 1, backend);
  Series2 r = expr::eval(shifted(w.r), truncation + 1, backend);
  if (u.low() < 0 || !u.coeff(0, 0).is_zero()) {
    throw Error(ErrorKind::not_a_leaf_presentation, "u must vanish at the base point");
  }
  if (u.equals(Series2::variable(Var::z1, backend, u.precision()))) return lemma25_chart(h, r);

  // New coordinates y = (u, other) so that du = dy1.
  if (u.coeff(1, 0).is_zero() && u.coeff(0, 1).is_zero()) {
    throw Error(ErrorKind::not_a_leaf_presentation, "du vanishes at the base point");
  }
  Series2 other = Series2::variable(u.coeff(1, 0).is_zero() ? Var::z1 : Var::z2, backend, u.precision());
  CoordMap inverse = reverse_map(CoordMap(u, other));
  return lemma25_chart(inverse.apply(h), inverse.apply(r));
}

Theorem26Data theorem26_solve(const Series2& v, int m) {
  if (m < 0) throw Error(ErrorKind::invalid_input, "contact order m must be nonnegative");
  Backend be = v.backend();
  int k = ord_along_axis(v, Var::z1);
  if (k < 0) throw Error(ErrorKind::not_normalized, "v has a pole along z1 = 0");
  Series2 vt = v.shifted_z1(-k).trimmed();
  if (vt.precision() < 0) throw Error(ErrorKind::precision_exhausted, "no coefficients left after removing z1^k");
  Scalar c = vt.coeff(0, 0);
  if (c.is_zero()) {
    throw Error(ErrorKind::not_normalized, "v / z1^" + std::to_string(k) +
                                               " vanishes at the origin; the divisor of v is not a multiple of z1 = 0");
  }
  Series2 L = log(vt * c.inverse());
  int n = L.precision();
  if (n - 1 < m) {
    throw Error(ErrorKind::precision_exhausted, "truncation " + std::to_string(n) + " too low to read alpha for m = " +
                                                    std::to_string(m));
  }

  Series1 slice = L.derivative(Var::z2).restrict_z2_zero();
  Scalar alpha = slice.coeff(m);
  int top = n - 1 - m;
  Series1 g(be, -m, top);
  for (int i = -m; i <= top; ++i) {
    if (i == 0) continue;
    Scalar gi = slice.coeff(i + m);
    gi /= Scalar::integer(i, be);
    g.set(i, gi);
  }
  Series1 f = L.restrict_z2_zero().truncated(top) - g;

  Series2 base = contact_factor(m, be, n + 1);
  Series2 p = base.shifted_z1(1);
  Series2 residual = L - log(base) * alpha - Series2::embed(f, Var::z1) - substitute(g, p);

  Scalar constant = c;
  try {
    Scalar lc = log(c);
    f.set(0, f.coeff(0) + lc);
    constant = Scalar::one(be);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::not_representable) throw;
  }
  bool zero = residual.is_zero();
  return {m, k, alpha, constant, std::move(f), std::move(g), std::move(residual), zero};
}

std::string_view to_string(MonodromyOrder o) {
  switch (o) {
    case MonodromyOrder::trivial: return "trivial";
    case MonodromyOrder::finite: return "finite";
    case MonodromyOrder::infinite: return "infinite";
  }
  return "?";
}

long rational_denominator_bound() {
  auto by_tolerance = static_cast<long>(std::floor(1.0 / std::sqrt(2.0 * tolerance())));
  return std::min(1'000'000L, std::max(1L, by_tolerance));
}

MonodromyIndex monodromy_index(const Scalar& alpha) {
  using namespace std::complex_literals;
  std::complex<double> c = std::exp(2.0 * std::numbers::pi * 1i * alpha.to_complex());
  MonodromyIndex out{alpha, c, 1.0 / c, std::nullopt, MonodromyOrder::infinite, 0, !alpha.is_exact()};

  std::optional<std::pair<mpz_class, mpz_class>> frac;  // alpha = p / q in lowest terms
  if (alpha.is_exact()) {
    if (auto q = alpha.as_rational()) frac = std::pair{mpz_class(q->get_num()), mpz_class(q->get_den())};
  } else if (std::abs(alpha.to_complex().imag()) <= tolerance()) {
    double x = alpha.to_complex().real();
    if (auto pq = reconstruct_rational(x, tolerance() * std::max(1.0, std::abs(x)), rational_denominator_bound())) {
      frac = std::pair{mpz_class(pq->first), mpz_class(pq->second)};
    }
  }
  if (!frac) return out;

  const auto& [num, den] = *frac;
  if (den == 1) {
    out.order = MonodromyOrder::trivial;
    out.n = 1;
  } else {
    out.order = MonodromyOrder::finite;
    out.n = den.get_si();
  }
  if (den == 1 || den == 2 || den == 4) {
    mpz_class r = num % den;
    if (r < 0) r += den;
    mpq_class phase(r, den);
    Backend be = alpha.backend();
    Scalar exact_c = phase == 0                 ? Scalar::one(be)
                     : phase == mpq_class(1, 2) ? -Scalar::one(be)
                     : phase == mpq_class(1, 4) ? Scalar::imaginary_unit(be)
                                                : -Scalar::imaginary_unit(be);
    out.c = exact_c.to_complex();
    out.c_inv = exact_c.inverse().to_complex();
    if (alpha.is_exact()) out.exact_c = exact_c;
  }
  return out;
}

std::string_view to_string(Singularity s) {
  switch (s) {
    case Singularity::none: return "none";
    case Singularity::meromorphic: return "meromorphic";
    case Singularity::essential: return "essential";
  }
  return "?";
}

LeafClass classify_leaf(const Theorem26Data& d) {
  if (!d.residual_zero) {
    throw Error(ErrorKind::nonzero_residual, "the normal form does not decompose; the differential is not closed");
  }
  bool poles = d.f.has_pole_part() || d.g.has_pole_part();
  long a = 0;
  bool integral = is_integer(d.alpha, &a);
  bool first_kind = integral && a >= 0 && a <= d.k && !poles;
  Singularity sing = poles                                  ? Singularity::essential
                     : integral && (a < 0 || a > d.k)       ? Singularity::meromorphic
                                                            : Singularity::none;
  return {first_kind, sing, monodromy_index(d.alpha), !first_kind};
}

}  // namespace symtwo
