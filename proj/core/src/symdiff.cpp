#include "symtwo/symdiff.hpp"

#include <algorithm>
#include <tuple>

#include "symtwo/error.hpp"

namespace symtwo {

namespace {

std::string var_name(Var v) { return v == Var::z1 ? "z1" : "z2"; }

// s * z1^e1 * z2^e2 with the guarantee moved accordingly.
Series2 mul_monomial(const Series2& s, int e1, int e2) {
  Series2 out(s.backend(), s.low() + e1, s.precision() + e1 + e2);
  s.for_each_known([&](int i, int j, const Scalar& c) {
    if (!c.is_exact_zero()) out.set(i + e1, j + e2, c);
  });
  return out;
}

// Exact division by z1^e1 * z2^e2; DivisionFailure when it does not divide.
Series2 div_monomial(const Series2& s, int e1, int e2) {
  Series2 out(s.backend(), s.low() - e1, s.precision() - e1 - e2);
  s.for_each_known([&](int i, int j, const Scalar& c) {
    if (i - e1 + j - e2 > out.precision()) return;
    if (j < e2) {
      if (!c.is_zero()) throw Error(ErrorKind::division_failure, "series is not divisible by z2^" + std::to_string(e2));
      return;
    }
    out.set(i - e1, j - e2, c);
  });
  return out.trimmed();
}

// Orders of z1 and z2 shared by every nonzero coefficient of the given
// series; identically zero series are ignored. Nullopt when all vanish.
std::optional<std::pair<int, int>> monomial_content(std::initializer_list<const Series2*> parts) {
  std::optional<std::pair<int, int>> out;
  for (const Series2* s : parts) {
    if (s->is_zero()) continue;
    int e1 = ord_along_axis(*s, Var::z1);
    int e2 = ord_along_axis(*s, Var::z2);
    if (!out) {
      out = std::pair{e1, e2};
    } else {
      out->first = std::min(out->first, e1);
      out->second = std::min(out->second, e2);
    }
  }
  return out;
}

// p = z1^e1 z2^e2 * unit, returning the exponents and the unit.
std::optional<std::tuple<int, int, Series2>> as_monomial_times_unit(const Series2& p) {
  if (p.is_zero()) return std::nullopt;
  int e1 = ord_along_axis(p, Var::z1);
  int e2 = ord_along_axis(p, Var::z2);
  Series2 q = div_monomial(p, e1, e2);
  if (q.low() < 0 || q.precision() < 0 || !q.is_unit()) return std::nullopt;
  return std::tuple{e1, e2, q};
}

// Sort key of the lowest nonzero term of a 1-form: total degree, then dz1
// before dz2, then higher z1 exponent first.
std::optional<std::tuple<int, int, int>> lowest_key(const OneForm& mu) {
  std::optional<std::tuple<int, int, int>> best;
  auto consider = [&](const Series2& s, int component) {
    auto terms = leading_terms(s, 1);
    if (terms.empty()) return;
    std::tuple<int, int, int> key{terms[0].i + terms[0].j, component, -terms[0].i};
    if (!best || key < *best) best = key;
  };
  consider(mu.A, 0);
  consider(mu.B, 1);
  return best;
}

Scalar lowest_coefficient(const Series2& s) {
  auto terms = leading_terms(s, 1);
  return terms.front().c;
}

Splitting normalize(OneForm first, OneForm second) {
  auto k1 = lowest_key(first);
  auto k2 = lowest_key(second);
  if (k1 && k2 && *k2 < *k1) std::swap(first, second);
  const Series2& lead = first.A.is_zero() ? first.B : first.A;
  Scalar lambda = lowest_coefficient(lead);
  first = first * lambda.inverse();
  second = second * lambda;
  return {std::move(first), std::move(second)};
}

Series2 power_of(const Component& comp, int k) {
  if (auto v = comp.axis_var()) {
    const Series2& h = comp.equation();
    return v == Var::z1 ? Series2::monomial(Scalar::one(h.backend()), k, 0, h.precision() + k)
                        : Series2::monomial(Scalar::one(h.backend()), 0, k, h.precision() + k);
  }
  return pow(comp.equation(), static_cast<long>(k));
}

Series2 restrict_to_axis(const Series2& s, Var axis) {
  return axis == Var::z1 ? Series2::embed(s.restrict_z1_zero(), Var::z2)
                         : Series2::embed(s.restrict_z2_zero(), Var::z1);
}

// Divide a 1-form by the highest power of the component dividing both
// coefficients (the form is expressed in straightened coordinates).
OneForm saturate(const OneForm& mu, Var axis) {
  auto content = monomial_content({&mu.A, &mu.B});
  if (!content) return mu;
  int k = axis == Var::z1 ? content->first : content->second;
  if (k <= 0) return mu;
  int e1 = axis == Var::z1 ? k : 0;
  int e2 = axis == Var::z2 ? k : 0;
  return {div_monomial(mu.A, e1, e2), div_monomial(mu.B, e1, e2)};
}

}  // namespace

bool OneForm::is_closed() const { return A.derivative(Var::z2).equals(B.derivative(Var::z1)); }

OneForm OneForm::differential(const Series2& f) { return {f.derivative(Var::z1), f.derivative(Var::z2)}; }

Series2 wedge(const OneForm& mu, const OneForm& nu) { return mu.A * nu.B - mu.B * nu.A; }

SymTwoDiff product(const OneForm& mu, const OneForm& nu) {
  return {mu.A * nu.A, mu.A * nu.B + mu.B * nu.A, mu.B * nu.B, std::pair{mu, nu}};
}

Series2 discriminant(const SymTwoDiff& w) {
  return w.a * w.c - (w.b * w.b) * Scalar::rational(1, 4, w.backend());
}

Component Component::axis(Var v, Backend backend, int precision) {
  return {var_name(v), v, Series2::variable(v, backend, precision)};
}

Component Component::curve(std::string label, Series2 equation) {
  if (equation.low() < 0 || equation.precision() < 1 || !equation.coeff(0, 0).is_zero()) {
    throw Error(ErrorKind::invalid_input, "component " + label + " must vanish at the origin");
  }
  return {std::move(label), std::nullopt, std::move(equation)};
}

Straightening straighten(const Component& component) {
  const Series2& h = component.equation();
  Backend be = h.backend();
  int prec = h.precision();
  if (auto v = component.axis_var()) {
    CoordMap id = CoordMap::identity(be, prec);
    return {id, id, *v};
  }
  if (!h.coeff(0, 1).is_zero()) {
    CoordMap from(Series2::variable(Var::z1, be, prec), h);
    return {reverse_map(from), from, Var::z2};
  }
  if (!h.coeff(1, 0).is_zero()) {
    CoordMap from(h, Series2::variable(Var::z2, be, prec));
    return {reverse_map(from), from, Var::z1};
  }
  throw Error(ErrorKind::unsupported_component,
              "component " + component.label() + " is singular at the origin; only smooth curves are supported");
}

int multiplicity(const Series2& s, const Component& component) {
  if (auto v = component.axis_var()) return ord_along_axis(s, *v);
  Straightening st = straighten(component);
  return ord_along_axis(st.to_original.apply(s), st.axis);
}

Series2 divide_by_component(const Series2& s, const Component& component, int k) {
  if (k == 0) return s;
  if (auto v = component.axis_var()) {
    if (ord_along_axis(s, *v) < k) {
      throw Error(ErrorKind::division_failure, var_name(*v) + "^" + std::to_string(k) + " does not divide the series");
    }
    return *v == Var::z1 ? div_monomial(s, k, 0) : div_monomial(s, 0, k);
  }
  Straightening st = straighten(component);
  Series2 straight = st.to_original.apply(s);
  if (ord_along_axis(straight, st.axis) < k) {
    throw Error(ErrorKind::division_failure,
                "(" + component.label() + ")^" + std::to_string(k) + " does not divide the series");
  }
  Series2 q = st.axis == Var::z1 ? div_monomial(straight, k, 0) : div_monomial(straight, 0, k);
  return st.from_original.apply(q);
}

CoreDiscriminant core_discriminant(const SymTwoDiff& w, const std::vector<Component>& components) {
  Series2 disc = discriminant(w);
  CoreDiscriminant out{disc, {}};
  for (const Component& comp : components) {
    int m = multiplicity(disc, comp);
    if (comp.expected_multiplicity && m < *comp.expected_multiplicity) {
      throw Error(ErrorKind::division_failure, "(" + comp.label() + ")^" + std::to_string(*comp.expected_multiplicity) +
                                                   " does not divide the discriminant (multiplicity " +
                                                   std::to_string(m) + ")");
    }
    std::optional<int> content;
    for (const Series2* s : {&w.a, &w.b, &w.c}) {
      if (s->is_zero()) continue;
      int k = multiplicity(*s, comp);
      content = content ? std::min(*content, k) : k;
    }
    int cont = content.value_or(0);
    out.core = divide_by_component(out.core, comp, 2 * cont);
    out.table.push_back({comp.label(), m, cont, m - 2 * cont});
  }
  return out;
}

int rank(const SymTwoDiff& w) {
  if (w.is_zero()) throw Error(ErrorKind::invalid_input, "the differential vanishes identically");
  Series2 disc = discriminant(w);
  if (!disc.is_zero()) return 2;
  if (disc.precision() < kMinRankPrecision) {
    throw Error(ErrorKind::inconclusive, "discriminant vanishes through order " + std::to_string(disc.precision()) +
                                             ", too low to certify rank 1");
  }
  return 1;
}

SplitResult split(const SymTwoDiff& w, const std::vector<Component>& extra_components) {
  if (w.is_zero()) throw Error(ErrorKind::invalid_input, "the differential vanishes identically");
  Backend be = w.backend();
  int prec = w.precision();
  OneForm dz1{Series2::constant(Scalar::one(be), prec), Series2::zero(be, prec)};
  OneForm dz2{Series2::zero(be, prec), Series2::constant(Scalar::one(be), prec)};

  if (w.a.is_zero()) {
    if (w.c.is_zero()) return normalize(OneForm{w.b, Series2::zero(be, prec)}, dz2);
    return normalize(dz2, OneForm{w.b, w.c});
  }
  if (w.c.is_zero()) return normalize(dz1, OneForm{w.a, w.b});

  // S = sqrt(b^2 - 4ac), assembled from even component powers and the
  // square root of the remaining unit.
  Series2 radicand = w.b * w.b - w.a * w.c * Scalar::integer(4, be);
  Series2 root = Series2::zero(be, radicand.precision());
  if (!radicand.is_zero()) {
    std::vector<Component> comps{Component::axis(Var::z1, be, prec), Component::axis(Var::z2, be, prec)};
    comps.insert(comps.end(), extra_components.begin(), extra_components.end());
    Series2 rest = radicand;
    std::vector<std::pair<const Component*, int>> halves;
    for (const Component& comp : comps) {
      int k = multiplicity(rest, comp);
      if (k % 2 != 0) return NotSplit{comp.label(), k, 2};
      if (k == 0) continue;
      rest = divide_by_component(rest, comp, k);
      halves.emplace_back(&comp, k / 2);
    }
    if (rest.low() < 0 || rest.precision() < 0 || !rest.is_unit()) {
      throw Error(ErrorKind::inconclusive,
                  "discriminant vanishes along a curve through the origin that was not supplied as a component");
    }
    root = sqrt(rest);
    for (auto [comp, half] : halves) {
      if (comp->axis_var() && *comp->axis_var() == Var::z1) {
        root = root.shifted_z1(half);
      } else {
        root = root * power_of(*comp, half);
      }
    }
  }

  Scalar half = Scalar::rational(1, 2, be);
  Series2 plus = (w.b + root) * half;
  Series2 minus = (w.b - root) * half;

  auto attempt = [&](bool pivot_a) -> std::optional<Splitting> {
    const Series2& pivot = pivot_a ? w.a : w.c;
    auto mono = as_monomial_times_unit(pivot);
    if (!mono) return std::nullopt;
    auto [e1, e2, unit] = *mono;
    OneForm mu1 = pivot_a ? OneForm{w.a, plus} : OneForm{plus, w.c};
    OneForm mu2 = pivot_a ? OneForm{w.a, minus} : OneForm{minus, w.c};
    auto g1 = monomial_content({&mu1.A, &mu1.B});
    auto g2 = monomial_content({&mu2.A, &mu2.B});
    if (!g1 || !g2) return std::nullopt;
    int x1 = g1->first + g2->first - e1;
    int x2 = g1->second + g2->second - e2;
    if (x1 < 0 || x2 < 0) return std::nullopt;
    OneForm q1{div_monomial(mu1.A, g1->first, g1->second), div_monomial(mu1.B, g1->first, g1->second)};
    OneForm q2{div_monomial(mu2.A, g2->first, g2->second), div_monomial(mu2.B, g2->first, g2->second)};
    Series2 factor = mul_monomial(invert_unit(unit), x1, x2);
    q1 = q1 * factor;
    if (!product(q1, q2).equals(w)) return std::nullopt;
    return normalize(std::move(q1), std::move(q2));
  };

  if (auto s = attempt(true)) return *s;
  if (auto s = attempt(false)) return *s;
  throw Error(ErrorKind::inconclusive, "neither dz1^2 nor dz2^2 coefficient is a monomial times a unit");
}

OneForm pullback(const OneForm& mu, const CoordMap& phi) {
  Series2 a = phi.apply(mu.A);
  Series2 b = phi.apply(mu.B);
  Series2 p11 = phi.first().derivative(Var::z1), p12 = phi.first().derivative(Var::z2);
  Series2 p21 = phi.second().derivative(Var::z1), p22 = phi.second().derivative(Var::z2);
  return {a * p11 + b * p21, a * p12 + b * p22};
}

SymTwoDiff pullback(const SymTwoDiff& w, const CoordMap& phi) {
  if (phi.jacobian_at_origin().is_zero() && !phi.is_ramified_cover()) {
    throw Error(ErrorKind::singular_jacobian, "map is neither invertible nor a ramified cover z1 = y1^d");
  }
  Series2 a = phi.apply(w.a);
  Series2 b = phi.apply(w.b);
  Series2 c = phi.apply(w.c);
  Series2 p11 = phi.first().derivative(Var::z1), p12 = phi.first().derivative(Var::z2);
  Series2 p21 = phi.second().derivative(Var::z1), p22 = phi.second().derivative(Var::z2);
  Scalar two = Scalar::integer(2, w.backend());
  SymTwoDiff out{
      a * p11 * p11 + b * p11 * p21 + c * p21 * p21,
      (a * p11 * p12 + c * p21 * p22) * two + b * (p11 * p22 + p12 * p21),
      a * p12 * p12 + b * p12 * p22 + c * p22 * p22,
      std::nullopt,
  };
  if (w.factors) out.factors = std::pair{pullback(w.factors->first, phi), pullback(w.factors->second, phi)};
  return out;
}

std::string_view to_string(Parity p) { return p == Parity::odd ? "N" : "S"; }

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::common_leaf: return "C";
    case Geometry::tangency: return "R";
    case Geometry::none: return "none";
    case Geometry::undecided: return "undecided";
  }
  return "?";
}

ComponentClass classify_component(const SymTwoDiff& w, const Component& component) {
  CoreDiscriminant core = core_discriminant(w, {component});
  const MultiplicityRow& row = core.table.front();
  if (row.in_discriminant == 0) {
    throw Error(ErrorKind::invalid_input, "component " + component.label() + " does not divide the discriminant");
  }
  ComponentClass out{row.in_discriminant % 2 ? Parity::odd : Parity::even, Geometry::undecided, row.in_discriminant,
                     row.in_core, ""};

  std::vector<Component> extra;
  if (!component.axis_var()) extra.push_back(component);
  SplitResult sr = [&]() -> SplitResult {
    try {
      return split(w, extra);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::inconclusive) throw;
      out.note = e.what();
      return NotSplit{component.label(), 0, 0};
    }
  }();
  auto* s = std::get_if<Splitting>(&sr);
  if (!s) {
    if (out.note.empty()) {
      const auto& ns = std::get<NotSplit>(sr);
      out.note = "RequiresSplit: w does not split near the origin (odd multiplicity " +
                 std::to_string(ns.multiplicity) + " along " + ns.component + "); pull back by a cover of degree " +
                 std::to_string(ns.suggested_cover_degree);
    }
    return out;
  }

  Straightening st = straighten(component);
  OneForm m1 = saturate(component.axis_var() ? s->first : pullback(s->first, st.to_original), st.axis);
  OneForm m2 = saturate(component.axis_var() ? s->second : pullback(s->second, st.to_original), st.axis);
  // The tangent direction of {y_axis = 0} is the other coordinate.
  auto tangent_part = [&](const OneForm& m) { return st.axis == Var::z1 ? m.B : m.A; };
  bool leaf1 = restrict_to_axis(tangent_part(m1), st.axis).is_zero();
  bool leaf2 = restrict_to_axis(tangent_part(m2), st.axis).is_zero();
  if (leaf1 && leaf2) {
    out.geometry = Geometry::common_leaf;
  } else if (restrict_to_axis(wedge(m1, m2), st.axis).is_zero()) {
    out.geometry = Geometry::tangency;
  } else {
    out.geometry = Geometry::none;
  }
  return out;
}

SymTwoDiff expand(const DifferentialInput& input, int truncation, Backend backend) {
  if (const auto* cf = std::get_if<CoefficientForm>(&input)) {
    return {expr::eval(cf->a, truncation, backend), expr::eval(cf->b, truncation, backend),
            expr::eval(cf->c, truncation, backend), std::nullopt};
  }
  const auto& pf = std::get<ProductForm>(input);
  Series2 scale = expr::eval(pf.scale, truncation, backend);
  Series2 u = expr::eval(pf.u, truncation + 1, backend);
  Series2 r = expr::eval(pf.r, truncation + 1, backend);
  return product(OneForm::differential(u) * scale, OneForm::differential(r));
}

}  // namespace symtwo
