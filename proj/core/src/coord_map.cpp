#include "symtwo/coord_map.hpp"

#include "symtwo/error.hpp"

namespace symtwo {

namespace {

Series2 origin_fixed(const Series2& s, const char* which) {
  Series2 t = s.low() < 0 ? s.trimmed() : s;
  if (t.low() < 0) throw Error(ErrorKind::valuation, std::string(which) + " component has a pole");
  if (t.precision() >= 0) {
    if (!t.coeff(0, 0).is_zero()) {
      throw Error(ErrorKind::valuation, std::string(which) + " component must vanish at the origin");
    }
    if (t.low() == 0) t.set(0, 0, Scalar::zero(t.backend()));
  }
  return t;
}

}  // namespace

CoordMap::CoordMap(Series2 first, Series2 second)
    : first_(origin_fixed(first, "first")), second_(origin_fixed(second, "second")) {
  if (first_.backend() != second_.backend()) throw Error(ErrorKind::backend_mismatch, "map components differ");
}

CoordMap CoordMap::identity(Backend backend, int precision) {
  return CoordMap(Series2::variable(Var::z1, backend, precision), Series2::variable(Var::z2, backend, precision));
}

CoordMap CoordMap::linear(const Scalar& a11, const Scalar& a12, const Scalar& a21, const Scalar& a22,
                          int precision) {
  Backend b = a11.backend();
  Series2 z1 = Series2::variable(Var::z1, b, precision);
  Series2 z2 = Series2::variable(Var::z2, b, precision);
  return CoordMap(z1 * a11 + z2 * a12, z1 * a21 + z2 * a22);
}

CoordMap CoordMap::ramified_cover(int degree, Backend backend, int precision) {
  if (degree < 1) throw Error(ErrorKind::invalid_input, "cover degree must be positive");
  return CoordMap(Series2::monomial(Scalar::one(backend), degree, 0, precision),
                  Series2::variable(Var::z2, backend, precision));
}

Scalar CoordMap::linear_coefficient(int row, int col) const {
  const Series2& s = row == 0 ? first_ : second_;
  if (s.precision() < 1) throw Error(ErrorKind::precision, "map known only to order zero");
  return col == 0 ? s.coeff(1, 0) : s.coeff(0, 1);
}

Scalar CoordMap::jacobian_at_origin() const {
  return linear_coefficient(0, 0) * linear_coefficient(1, 1) - linear_coefficient(0, 1) * linear_coefficient(1, 0);
}

Series2 CoordMap::jacobian_determinant() const {
  return first_.derivative(Var::z1) * second_.derivative(Var::z2) -
         first_.derivative(Var::z2) * second_.derivative(Var::z1);
}

bool CoordMap::is_ramified_cover() const {
  auto is_monomial = [](const Series2& s, int i0, int j0) {
    bool ok = true;
    s.for_each_known([&](int i, int j, const Scalar& c) {
      bool expected_one = (i == i0 && j == j0);
      if (expected_one ? !c.equals(Scalar::one(c.backend())) : !c.is_zero()) ok = false;
    });
    return ok && i0 + j0 <= s.precision();
  };
  if (!is_monomial(second_, 0, 1)) return false;
  for (int d = 2; d <= first_.precision(); ++d) {
    if (is_monomial(first_, d, 0)) return true;
  }
  return false;
}

Series2 CoordMap::apply(const Series2& s_in) const {
  if (s_in.backend() != backend()) throw Error(ErrorKind::backend_mismatch, "series and map backends differ");
  Series2 s = s_in.low() < 0 ? s_in.trimmed() : s_in;
  if (s.low() < 0) {
    // s = z1^low * holomorphic
    Series2 holomorphic = s.shifted_z1(-s.low());
    return apply(holomorphic) * pow(first_, static_cast<long>(s.low()));
  }
  int top = s.precision();
  if (top < 0) return Series2::zero(backend(), top);
  int prec = precision();

  std::vector<Series2> z2_powers;
  z2_powers.reserve(static_cast<std::size_t>(top + 1));
  z2_powers.push_back(Series2::constant(Scalar::one(backend()), prec));
  for (int j = 1; j <= top; ++j) z2_powers.push_back(z2_powers.back() * second_);

  auto row_sum = [&](int i) {
    Series2 acc = Series2::zero(backend(), prec);
    for (int j = 0; i + j <= top; ++j) {
      Scalar c = s.coeff(i, j);
      if (!c.is_exact_zero()) acc += z2_powers[static_cast<std::size_t>(j)] * c;
    }
    return acc;
  };

  // Horner in phi1 over the rows sum_j c_ij phi2^j.
  Series2 result = row_sum(top);
  for (int i = top - 1; i >= 0; --i) result = result * first_ + row_sum(i);
  return result.truncated(top);
}

CoordMap CoordMap::compose(const CoordMap& inner) const {
  return CoordMap(inner.apply(first_), inner.apply(second_));
}

bool CoordMap::equals(const CoordMap& other) const {
  return first_.equals(other.first_) && second_.equals(other.second_);
}

CoordMap reverse_map(const CoordMap& phi) {
  Backend backend = phi.backend();
  Scalar a11 = phi.linear_coefficient(0, 0), a12 = phi.linear_coefficient(0, 1);
  Scalar a21 = phi.linear_coefficient(1, 0), a22 = phi.linear_coefficient(1, 1);
  Scalar det = a11 * a22 - a12 * a21;
  if (det.is_zero()) throw Error(ErrorKind::singular_jacobian, "Jacobian determinant vanishes at the origin");
  Scalar inv_det = det.inverse();
  Scalar b11 = a22 * inv_det, b12 = -a12 * inv_det;
  Scalar b21 = -a21 * inv_det, b22 = a11 * inv_det;

  int n = phi.precision();
  Series2 psi1(backend, 0, n), psi2(backend, 0, n);
  psi1.set(1, 0, b11);
  psi1.set(0, 1, b12);
  psi2.set(1, 0, b21);
  psi2.set(0, 1, b22);

  for (int d = 2; d <= n; ++d) {
    CoordMap truncated_phi(phi.first().truncated(d), phi.second().truncated(d));
    CoordMap truncated_psi(psi1.truncated(d), psi2.truncated(d));
    CoordMap roundtrip = truncated_phi.compose(truncated_psi);
    for (int i = 0; i <= d; ++i) {
      Scalar e1 = roundtrip.first().coeff(i, d - i);
      Scalar e2 = roundtrip.second().coeff(i, d - i);
      psi1.add_to(i, d - i, -(b11 * e1 + b12 * e2));
      psi2.add_to(i, d - i, -(b21 * e1 + b22 * e2));
    }
  }
  return CoordMap(std::move(psi1), std::move(psi2));
}

}  // namespace symtwo
