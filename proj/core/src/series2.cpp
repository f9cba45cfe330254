#include "symtwo/series2.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "symtwo/error.hpp"

namespace symtwo {

namespace {

void require_same_backend(const Series2& a, const Series2& b) {
  if (a.backend() != b.backend()) throw Error(ErrorKind::backend_mismatch, "series backends differ");
}

// Homogeneous decomposition of a holomorphic series: parts[d][i] = c_{i,d-i}.
using Parts = std::vector<std::vector<Scalar>>;

Parts homogeneous_parts(const Series2& s) {
  Parts parts;
  for (int d = 0; d <= s.precision(); ++d) {
    std::vector<Scalar> row;
    row.reserve(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) row.push_back(s.coeff(i, d - i));
    parts.push_back(std::move(row));
  }
  return parts;
}

Series2 from_parts(const Parts& parts, Backend backend, int precision) {
  Series2 out(backend, 0, precision);
  for (int d = 0; d <= precision; ++d) {
    for (int i = 0; i <= d; ++i) out.set(i, d - i, parts[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)]);
  }
  return out;
}

// acc += factor * (x * y) for homogeneous polynomials x, y.
void accumulate_product(std::vector<Scalar>& acc, const std::vector<Scalar>& x, const std::vector<Scalar>& y,
                        const Scalar& factor) {
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_exact_zero()) continue;
    Scalar xa = x[a] * factor;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (y[b].is_exact_zero()) continue;
      acc[a + b].add_product(xa, y[b]);
    }
  }
}

std::vector<Scalar> zeros(std::size_t n, Backend backend) { return std::vector<Scalar>(n, Scalar::zero(backend)); }

// Prepare a series that must be a unit: drop vanished pole rows, check c00.
Series2 as_unit(const Series2& u, const char* what) {
  Series2 t = u.low() < 0 ? u.trimmed() : u;
  if (t.low() < 0 || t.precision() < 0 || t.coeff(0, 0).is_zero()) {
    throw Error(ErrorKind::not_a_unit, std::string(what) + " requires a unit (nonzero constant term, no pole)");
  }
  return t;
}

}  // namespace

Series2::Series2(Backend backend, int low, int precision) : backend_(backend), low_(low), prec_(precision) {
  if (prec_ >= low_) {
    auto width = static_cast<std::size_t>(prec_ - low_ + 1);
    coeffs_.assign(width * (width + 1) / 2, Scalar::zero(backend));
  }
}

Series2 Series2::zero(Backend backend, int precision) { return Series2(backend, 0, precision); }

Series2 Series2::constant(const Scalar& c, int precision) {
  Series2 s(c.backend(), 0, precision);
  if (precision >= 0) s.set(0, 0, c);
  return s;
}

Series2 Series2::monomial(const Scalar& c, int i, int j, int precision) {
  if (j < 0) throw Error(ErrorKind::invalid_input, "negative powers of z2 are not representable");
  Series2 s(c.backend(), std::min(0, i), precision);
  if (i + j <= precision) s.set(i, j, c);
  return s;
}

Series2 Series2::variable(Var v, Backend backend, int precision) {
  return v == Var::z1 ? monomial(Scalar::one(backend), 1, 0, precision)
                      : monomial(Scalar::one(backend), 0, 1, precision);
}

Series2 Series2::embed(const Series1& s, Var v) {
  if (v == Var::z2 && s.low() < 0) throw Error(ErrorKind::invalid_input, "Laurent terms are allowed in z1 only");
  Series2 out(s.backend(), std::min(0, s.low()), s.precision());
  for (int e = s.low(); e <= s.precision(); ++e) {
    if (v == Var::z1) {
      out.set(e, 0, s.coeff(e));
    } else {
      out.set(0, e, s.coeff(e));
    }
  }
  return out;
}

Scalar Series2::coeff(int i, int j) const {
  if (j < 0 || i < low_) return Scalar::zero(backend_);
  if (i + j > prec_) {
    throw Error(ErrorKind::precision, "coefficient z1^" + std::to_string(i) + " z2^" + std::to_string(j) +
                                          " beyond guaranteed order " + std::to_string(prec_));
  }
  return coeffs_[index(i, j)];
}

void Series2::set(int i, int j, const Scalar& c) {
  if (j < 0 || i < low_ || i + j > prec_) throw Error(ErrorKind::precision, "index outside series storage");
  if (c.backend() != backend_) throw Error(ErrorKind::backend_mismatch, "coefficient backend differs");
  coeffs_[index(i, j)] = c;
}

void Series2::add_to(int i, int j, const Scalar& c) {
  if (j < 0 || i < low_ || i + j > prec_) throw Error(ErrorKind::precision, "index outside series storage");
  coeffs_[index(i, j)] += c;
}

int Series2::valuation() const {
  int best = prec_ + 1;
  for_each_known([&](int i, int j, const Scalar& c) {
    if (i + j < best && !c.is_exact_zero()) best = i + j;
  });
  return best;
}

bool Series2::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

bool Series2::equals(const Series2& other) const {
  require_same_backend(*this, other);
  int top = std::min(prec_, other.prec_);
  for (int i = std::min(low_, other.low_); i <= top; ++i) {
    for (int j = 0; i + j <= top; ++j) {
      if (!coeff(i, j).equals(other.coeff(i, j))) return false;
    }
  }
  return true;
}

bool Series2::is_unit() const {
  for (int i = low_; i < 0 && i <= prec_; ++i) {
    for (int j = 0; i + j <= prec_; ++j) {
      if (!coeff(i, j).is_zero()) return false;
    }
  }
  return prec_ >= 0 && !coeff(0, 0).is_zero();
}

Series2 Series2::truncated(int precision) const {
  int top = std::min(precision, prec_);
  Series2 out(backend_, low_, top);
  for (int i = low_; i <= top; ++i) {
    for (int j = 0; i + j <= top; ++j) out.set(i, j, coeffs_[index(i, j)]);
  }
  return out;
}

Series2 Series2::trimmed() const {
  int new_low = low_;
  while (new_low < prec_) {
    bool vanishes = true;
    for (int j = 0; new_low + j <= prec_; ++j) {
      if (!coeff(new_low, j).is_zero()) {
        vanishes = false;
        break;
      }
    }
    if (!vanishes) break;
    ++new_low;
  }
  if (new_low == low_) return *this;
  Series2 out(backend_, new_low, prec_);
  for (int i = new_low; i <= prec_; ++i) {
    for (int j = 0; i + j <= prec_; ++j) out.set(i, j, coeffs_[index(i, j)]);
  }
  return out;
}

Series2 Series2::shifted_z1(int k) const {
  Series2 out(backend_, low_ + k, prec_ + k);
  for_each_known([&](int i, int j, const Scalar& c) { out.set(i + k, j, c); });
  return out;
}

Series2 Series2::divided_by_z2_power(int k) const {
  if (k <= 0) return *this;
  Series2 out(backend_, low_, prec_ - k);
  for_each_known([&](int i, int j, const Scalar& c) {
    if (j < k) {
      if (!c.is_zero()) throw Error(ErrorKind::division_by_non_unit, "series is not divisible by z2^" + std::to_string(k));
    } else {
      out.set(i, j - k, c);
    }
  });
  return out;
}

Series2 Series2::derivative(Var v) const {
  if (v == Var::z1) {
    Series2 out(backend_, low_ == 0 ? 0 : low_ - 1, prec_ - 1);
    for_each_known([&](int i, int j, const Scalar& c) {
      if (i == 0 || c.is_exact_zero()) return;
      Scalar d = c;
      out.set(i - 1, j, d.scale(i));
    });
    return out;
  }
  Series2 out(backend_, low_, prec_ - 1);
  for_each_known([&](int i, int j, const Scalar& c) {
    if (j == 0 || c.is_exact_zero()) return;
    Scalar d = c;
    out.set(i, j - 1, d.scale(j));
  });
  return out;
}

Series2 Series2::homogeneous_part(int degree) const {
  Series2 out(backend_, low_, prec_);
  for (int i = low_; i <= degree; ++i) {
    if (degree - i >= 0 && degree <= prec_) out.set(i, degree - i, coeff(i, degree - i));
  }
  return out;
}

Series1 Series2::restrict_z2_zero() const {
  Series1 out(backend_, low_, prec_);
  for (int i = low_; i <= prec_; ++i) out.set(i, coeff(i, 0));
  return out;
}

Series1 Series2::restrict_z1_zero() const {
  Series2 t = low_ < 0 ? trimmed() : *this;
  if (t.low() < 0) throw Error(ErrorKind::valuation, "cannot restrict a Laurent series to z1 = 0");
  Series1 out(backend_, 0, prec_);
  for (int j = 0; j <= prec_; ++j) out.set(j, t.coeff(0, j));
  return out;
}

Series2& Series2::operator+=(const Series2& rhs) {
  require_same_backend(*this, rhs);
  Series2 out(backend_, std::min(low_, rhs.low_), std::min(prec_, rhs.prec_));
  for (int i = out.low_; i <= out.prec_; ++i) {
    for (int j = 0; i + j <= out.prec_; ++j) {
      Scalar c = coeff(i, j);
      c += rhs.coeff(i, j);
      out.coeffs_[out.index(i, j)] = std::move(c);
    }
  }
  return *this = std::move(out);
}

Series2& Series2::operator-=(const Series2& rhs) { return *this += -rhs; }

Series2 Series2::operator-() const {
  Series2 out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Series2 Series2::plus_constant(const Scalar& c) const {
  Series2 out = low_ > 0 ? Series2(backend_, 0, prec_) + *this : *this;
  if (prec_ >= 0) out.add_to(0, 0, c);
  return out;
}

Series2 operator*(const Series2& a, const Series2& b) {
  require_same_backend(a, b);
  int prec = std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
  Series2 out(a.backend_, a.low_ + b.low_, prec);
  for (int i1 = a.low_; i1 <= a.prec_; ++i1) {
    for (int j1 = 0; i1 + j1 <= a.prec_; ++j1) {
      const Scalar& x = a.coeffs_[a.index(i1, j1)];
      if (x.is_exact_zero()) continue;
      int budget = prec - i1 - j1;  // remaining total degree for b's term
      for (int i2 = b.low_; i2 <= b.prec_ && i2 <= budget; ++i2) {
        for (int j2 = 0; i2 + j2 <= b.prec_ && i2 + j2 <= budget; ++j2) {
          const Scalar& y = b.coeffs_[b.index(i2, j2)];
          if (y.is_exact_zero()) continue;
          out.coeffs_[out.index(i1 + i2, j1 + j2)].add_product(x, y);
        }
      }
    }
  }
  return out;
}

Series2 operator*(Series2 a, const Scalar& c) {
  for (auto& x : a.coeffs_) x *= c;
  return a;
}

std::string Series2::to_string() const {
  std::string out;
  for (const auto& t : leading_terms(*this, static_cast<std::size_t>(-1))) {
    if (!out.empty()) out += " + ";
    out += "(" + t.c.to_string() + ")";
    if (t.i != 0) out += "*z1^" + (t.i < 0 ? "(" + std::to_string(t.i) + ")" : std::to_string(t.i));
    if (t.j != 0) out += "*z2^" + std::to_string(t.j);
  }
  if (out.empty()) out = "0";
  return out + " + O(" + std::to_string(prec_ + 1) + ")";
}

Series2 invert_unit(const Series2& u_in) {
  Series2 u = as_unit(u_in, "invert_unit");
  Backend backend = u.backend();
  int n = u.precision();
  Parts parts = homogeneous_parts(u);
  Scalar inv0 = parts[0][0].inverse();
  Scalar neg_inv0 = -inv0;
  Parts y(static_cast<std::size_t>(n + 1));
  y[0] = {inv0};
  for (int d = 1; d <= n; ++d) {
    auto acc = zeros(static_cast<std::size_t>(d + 1), backend);
    for (int k = 1; k <= d; ++k) accumulate_product(acc, parts[k], y[d - k], neg_inv0);
    y[d] = std::move(acc);
  }
  return from_parts(y, backend, n);
}

Series2 reciprocal(const Series2& b) {
  int k = ord_along_axis(b, Var::z1);
  Series2 unit = b.shifted_z1(-k).trimmed();
  if (unit.low() < 0 || unit.precision() < 0 || unit.coeff(0, 0).is_zero()) {
    throw Error(ErrorKind::division_by_non_unit, "divisor is not z1^k times a unit");
  }
  return invert_unit(unit).shifted_z1(-k);
}

Series2 divide(const Series2& a, const Series2& b) { return a * reciprocal(b); }

Series2 pow(const Series2& s, long n) {
  if (n < 0) return pow(reciprocal(s), -n);
  if (n == 0) return Series2::constant(Scalar::one(s.backend()), s.precision());
  std::optional<Series2> result;
  Series2 base = s;
  while (true) {
    if (n & 1) result = result ? *result * base : base;
    n >>= 1;
    if (n == 0) break;
    base = base * base;
  }
  return *result;
}

Series2 pow(const Series2& u_in, const Scalar& exponent_in) {
  Scalar exponent = exponent_in.to_backend(u_in.backend());
  if (auto n = exponent_in.as_integer()) return pow(u_in, *n);
  if (!exponent_in.is_exact()) {
    std::complex<double> e = exponent.to_complex();
    if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) < 1e9) {
      return pow(u_in, static_cast<long>(e.real()));
    }
  }
  Series2 u = as_unit(u_in, "pow");
  Backend backend = u.backend();
  int n = u.precision();
  Parts parts = homogeneous_parts(u);
  Scalar c0 = parts[0][0];
  Scalar inv_c0 = c0.inverse();
  for (auto& part : parts) {
    for (auto& c : part) c *= inv_c0;
  }
  Parts y(static_cast<std::size_t>(n + 1));
  y[0] = {Scalar::one(backend)};
  for (int d = 1; d <= n; ++d) {
    auto acc = zeros(static_cast<std::size_t>(d + 1), backend);
    for (int k = 1; k <= d; ++k) {
      // (e*k - (d-k)) * U_k * Y_{d-k}
      Scalar factor = exponent * Scalar::integer(k, backend) - Scalar::integer(d - k, backend);
      accumulate_product(acc, parts[k], y[d - k], factor);
    }
    Scalar inv_d = Scalar::rational(1, d, backend);
    for (auto& c : acc) c *= inv_d;
    y[d] = std::move(acc);
  }
  return from_parts(y, backend, n) * pow(c0, exponent);
}

Series2 sqrt(const Series2& u) { return pow(u, Scalar::rational(1, 2, u.backend())); }

Series2 exp(const Series2& s_in) {
  Series2 s = s_in.low() < 0 ? s_in.trimmed() : s_in;
  if (s.low() < 0) throw Error(ErrorKind::valuation, "exp of a series with a pole part");
  Backend backend = s.backend();
  int n = s.precision();
  if (n < 0) return Series2::zero(backend, n);
  Parts parts = homogeneous_parts(s);
  Scalar c0 = parts[0][0];
  Parts y(static_cast<std::size_t>(n + 1));
  y[0] = {Scalar::one(backend)};
  for (int d = 1; d <= n; ++d) {
    auto acc = zeros(static_cast<std::size_t>(d + 1), backend);
    for (int k = 1; k <= d; ++k) accumulate_product(acc, parts[k], y[d - k], Scalar::integer(k, backend));
    Scalar inv_d = Scalar::rational(1, d, backend);
    for (auto& c : acc) c *= inv_d;
    y[d] = std::move(acc);
  }
  Series2 out = from_parts(y, backend, n);
  if (c0.is_exact_zero()) return out;
  return out * exp(c0);
}

Series2 log(const Series2& u_in) {
  Series2 u = as_unit(u_in, "log");
  Backend backend = u.backend();
  int n = u.precision();
  Parts parts = homogeneous_parts(u);
  Scalar c0 = parts[0][0];
  Scalar inv_c0 = c0.inverse();
  for (auto& part : parts) {
    for (auto& c : part) c *= inv_c0;
  }
  Parts y(static_cast<std::size_t>(n + 1));
  y[0] = {log(c0)};
  for (int d = 1; d <= n; ++d) {
    // d L_d = d U_d - sum_{k=1}^{d-1} (d-k) U_k L_{d-k}
    auto acc = parts[d];
    for (auto& c : acc) c.scale(d);
    for (int k = 1; k < d; ++k) accumulate_product(acc, parts[k], y[d - k], Scalar::integer(-(d - k), backend));
    Scalar inv_d = Scalar::rational(1, d, backend);
    for (auto& c : acc) c *= inv_d;
    y[d] = std::move(acc);
  }
  return from_parts(y, backend, n);
}

int ord_along_axis(const Series2& s, Var axis) {
  std::optional<int> best;
  s.for_each_known([&](int i, int j, const Scalar& c) {
    if (c.is_zero()) return;
    int e = axis == Var::z1 ? i : j;
    if (!best || e < *best) best = e;
  });
  if (!best) {
    throw Error(ErrorKind::zero_series,
                "all coefficients through order " + std::to_string(s.precision()) + " vanish; raise the truncation");
  }
  return *best;
}

Series2 substitute(const Series1& g, const Series2& p_in) {
  if (g.backend() != p_in.backend()) throw Error(ErrorKind::backend_mismatch, "series backends differ");
  Series2 p = p_in.low() < 0 ? p_in.trimmed() : p_in;
  if (p.low() < 0 || p.precision() < 0 || !p.coeff(0, 0).is_zero()) {
    throw Error(ErrorKind::valuation, "inner series must vanish at the origin");
  }
  if (!p.coeff(0, 0).is_exact_zero()) {
    p.set(0, 0, Scalar::zero(p.backend()));
  }
  Backend backend = g.backend();
  int low = g.low();
  int top = g.precision();
  // h(t) = sum_{n>=0} g_{low+n} t^n by Horner, then multiply by p^low.
  Series2 acc = Series2::zero(backend, p.precision());
  if (top >= low) {
    acc = Series2::constant(g.coeff(top), p.precision());
    for (int e = top - 1; e >= low; --e) acc = (acc * p).plus_constant(g.coeff(e));
  }
  Series2 result = acc;
  if (low > 0) {
    result = acc * pow(p, static_cast<long>(low));
  } else if (low < 0) {
    Series2 q = p.shifted_z1(-1).trimmed();
    if (q.low() < 0 || q.precision() < 0 || q.coeff(0, 0).is_zero()) {
      throw Error(ErrorKind::valuation, "a Laurent outer series needs an inner series of the form z1 * unit");
    }
    result = (acc * pow(invert_unit(q), static_cast<long>(-low))).shifted_z1(low);
  }
  return result.truncated(top);
}

Series1 substitute(const Series1& f, const Series1& p_in) {
  Series2 p = Series2::embed(p_in, Var::z1);
  Series2 out = substitute(f, p);
  return out.restrict_z2_zero();
}

std::vector<Term> leading_terms(const Series2& s, std::size_t count) {
  std::vector<Term> terms;
  for (int d = s.low(); d <= s.precision() && terms.size() < count; ++d) {
    for (int i = d; i >= s.low() && terms.size() < count; --i) {
      int j = d - i;
      Scalar c = s.coeff(i, j);
      if (!c.is_zero()) terms.push_back({i, j, c});
    }
  }
  return terms;
}

}  // namespace symtwo
