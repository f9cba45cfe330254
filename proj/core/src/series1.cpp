#include "symtwo/series1.hpp"

#include <algorithm>

#include "symtwo/error.hpp"

namespace symtwo {

Series1::Series1(Backend backend, int low, int precision)
    : backend_(backend), low_(low), prec_(precision) {
  if (prec_ >= low_) coeffs_.assign(static_cast<std::size_t>(prec_ - low_ + 1), Scalar::zero(backend));
}

Series1 Series1::zero(Backend backend, int precision) { return Series1(backend, 0, precision); }

Series1 Series1::constant(const Scalar& c, int precision) {
  Series1 s(c.backend(), 0, precision);
  if (precision >= 0) s.set(0, c);
  return s;
}

Series1 Series1::monomial(const Scalar& c, int exponent, int precision) {
  Series1 s(c.backend(), std::min(0, exponent), precision);
  if (exponent <= precision) s.set(exponent, c);
  return s;
}

Scalar Series1::coeff(int e) const {
  if (e > prec_) {
    throw Error(ErrorKind::precision, "coefficient t^" + std::to_string(e) + " beyond guaranteed order " +
                                          std::to_string(prec_));
  }
  if (e < low_) return Scalar::zero(backend_);
  return coeffs_[static_cast<std::size_t>(e - low_)];
}

void Series1::set(int e, const Scalar& c) {
  if (e > prec_ || e < low_) throw Error(ErrorKind::precision, "exponent outside series storage");
  if (c.backend() != backend_) throw Error(ErrorKind::backend_mismatch, "coefficient backend differs");
  coeffs_[static_cast<std::size_t>(e - low_)] = c;
}

int Series1::valuation() const {
  for (int e = low_; e <= prec_; ++e) {
    if (!coeffs_[static_cast<std::size_t>(e - low_)].is_exact_zero()) return e;
  }
  return prec_ + 1;
}

bool Series1::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

bool Series1::equals(const Series1& other) const {
  if (backend_ != other.backend_) throw Error(ErrorKind::backend_mismatch, "series backends differ");
  int top = std::min(prec_, other.prec_);
  for (int e = std::min(low_, other.low_); e <= top; ++e) {
    if (!coeff(e).equals(other.coeff(e))) return false;
  }
  return true;
}

bool Series1::has_pole_part() const { return effective_pole_order() > 0; }

int Series1::effective_pole_order() const {
  for (int e = low_; e < 0 && e <= prec_; ++e) {
    if (!coeff(e).is_zero()) return -e;
  }
  return 0;
}

Series1 Series1::pole_part() const {
  Series1 out(backend_, std::min(low_, 0), prec_);
  for (int e = low_; e < 0 && e <= prec_; ++e) out.set(e, coeff(e));
  return out;
}

Series1 Series1::truncated(int precision) const {
  int top = std::min(precision, prec_);
  Series1 out(backend_, low_, top);
  for (int e = low_; e <= top; ++e) out.set(e, coeff(e));
  return out;
}

Series1 Series1::trimmed() const {
  int new_low = low_;
  while (new_low < prec_ && coeff(new_low).is_zero()) ++new_low;
  Series1 out(backend_, new_low, prec_);
  for (int e = new_low; e <= prec_; ++e) out.set(e, coeff(e));
  return out;
}

Series1 Series1::derivative() const {
  int new_low = low_ == 0 ? 0 : low_ - 1;
  Series1 out(backend_, new_low, prec_ - 1);
  for (int e = low_; e <= prec_; ++e) {
    if (e == 0) continue;
    Scalar c = coeff(e);
    out.set(e - 1, c.scale(e));
  }
  return out;
}

Series1& Series1::operator+=(const Series1& rhs) {
  if (backend_ != rhs.backend_) throw Error(ErrorKind::backend_mismatch, "series backends differ");
  Series1 out(backend_, std::min(low_, rhs.low_), std::min(prec_, rhs.prec_));
  for (int e = out.low_; e <= out.prec_; ++e) out.set(e, coeff(e) + rhs.coeff(e));
  return *this = std::move(out);
}

Series1& Series1::operator-=(const Series1& rhs) { return *this += -rhs; }

Series1 Series1::operator-() const {
  Series1 out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Series1 operator*(const Series1& a, const Series1& b) {
  if (a.backend_ != b.backend_) throw Error(ErrorKind::backend_mismatch, "series backends differ");
  int prec = std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
  Series1 out(a.backend_, a.low_ + b.low_, prec);
  for (int e1 = a.low_; e1 <= a.prec_; ++e1) {
    const Scalar& x = a.coeffs_[static_cast<std::size_t>(e1 - a.low_)];
    if (x.is_exact_zero()) continue;
    for (int e2 = b.low_; e2 <= b.prec_ && e1 + e2 <= prec; ++e2) {
      const Scalar& y = b.coeffs_[static_cast<std::size_t>(e2 - b.low_)];
      if (y.is_exact_zero()) continue;
      out.coeffs_[static_cast<std::size_t>(e1 + e2 - out.low_)].add_product(x, y);
    }
  }
  return out;
}

Series1 operator*(Series1 a, const Scalar& c) {
  for (auto& x : a.coeffs_) x *= c;
  return a;
}

std::string Series1::to_string(const std::string& var) const {
  std::string out;
  for (int e = low_; e <= prec_; ++e) {
    const Scalar& c = coeffs_[static_cast<std::size_t>(e - low_)];
    if (c.is_exact_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (e != 0) out += "*" + var + "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  if (out.empty()) out = "0";
  return out + " + O(" + var + "^" + std::to_string(prec_ + 1) + ")";
}

}  // namespace symtwo
