#include "symtwo/closedness.hpp"

#include <array>

#include "symtwo/error.hpp"

namespace symtwo {

namespace {

using Matrix = std::array<std::array<Series2, 3>, 3>;

Series2 det3(const Matrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

Series2 brioschi_numerator(const SymTwoDiff& w) {
  Backend be = w.backend();
  Scalar half = Scalar::rational(1, 2, be);
  const Series2& E = w.a;
  Series2 F = w.b * half;
  const Series2& G = w.c;
  auto du = [](const Series2& s) { return s.derivative(Var::z1); };
  auto dv = [](const Series2& s) { return s.derivative(Var::z2); };
  Series2 Eu = du(E), Ev = dv(E), Fu = du(F), Fv = dv(F), Gu = du(G), Gv = dv(G);
  Series2 zero = Series2::zero(be, w.precision());

  Matrix m1{{
      {-(dv(Ev) * half) + dv(Fu) - du(Gu) * half, Eu * half, Fu - Ev * half},
      {Fv - Gu * half, E, F},
      {Gv * half, F, G},
  }};
  Matrix m2{{
      {zero, Ev * half, Gu * half},
      {Ev * half, E, F},
      {Gu * half, F, G},
  }};
  return det3(m1) - det3(m2);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ClosednessReport is_closed(const SymTwoDiff& w) {
  Series2 numerator = brioschi_numerator(w);
  if (discriminant(w).is_zero()) {
    return {std::move(numerator), Verdict::inconclusive,
            "discriminant vanishes through the guaranteed order (rank 1); closedness is only characterized in rank 2"};
  }
  Verdict v = numerator.is_zero() ? Verdict::yes : Verdict::no;
  return {std::move(numerator), v, "rank 2"};
}

DecomposeResult first_kind_decompose(const Series2& g) {
  if (!g.is_unit()) throw Error(ErrorKind::not_a_unit, "first-kind decomposition needs g(0,0) != 0");
  Series1 f = g.restrict_z2_zero();
  Series1 h = g.restrict_z1_zero() * g.coeff(0, 0).inverse();
  Series2 residual = g - Series2::embed(f, Var::z1) * Series2::embed(h, Var::z2);
  if (!residual.is_zero()) return NotSeparable{std::move(residual)};
  return Separation{std::move(f), std::move(h)};
}

std::variant<Scalar, Mismatch> compare_decompositions(const std::pair<OneForm, OneForm>& mus,
                                                      const std::pair<OneForm, OneForm>& etas) {
  auto parallel = [](const OneForm& x, const OneForm& y) { return wedge(x, y).is_zero(); };
  std::pair<OneForm, OneForm> eta = etas;
  if (!(parallel(mus.first, eta.first) && parallel(mus.second, eta.second))) {
    if (parallel(mus.first, eta.second) && parallel(mus.second, eta.first)) {
      std::swap(eta.first, eta.second);
    } else {
      return Mismatch{"factors do not define the same pair of foliations"};
    }
  }
  const OneForm& mu1 = mus.first;
  if (mu1.is_zero()) return Mismatch{"first factor vanishes"};
  const Series2& ref = mu1.A.is_zero() ? mu1.B : mu1.A;
  const Series2& other = mu1.A.is_zero() ? eta.first.B : eta.first.A;
  auto lead = leading_terms(ref, 1).front();
  if (!other.knows(lead.i, lead.j)) return Mismatch{"insufficient precision to compare"};
  Scalar c = other.coeff(lead.i, lead.j) / lead.c;
  if (c.is_zero()) return Mismatch{"ratio vanishes"};
  if (!eta.first.equals(mu1 * c) || !eta.second.equals(mus.second * c.inverse())) {
    return Mismatch{"ratio of matched factors is not constant"};
  }
  return c;
}

bool verify_abelian_relation(const std::pair<Series2, Series2>& fs, const std::pair<OneForm, OneForm>& mus) {
  OneForm sum{fs.first * mus.first.A + fs.second * mus.second.A, fs.first * mus.first.B + fs.second * mus.second.B};
  if (!sum.is_zero()) return false;
  return wedge(OneForm::differential(fs.first), mus.first).is_zero() &&
         wedge(OneForm::differential(fs.second), mus.second).is_zero();
}

}  // namespace symtwo
