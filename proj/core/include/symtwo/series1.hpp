#pragma once

#include <string>
#include <vector>

#include "symtwo/scalar.hpp"

namespace symtwo {

/// Truncated univariate Laurent series sum_{e=low}^{precision} c_e t^e.
///
/// `low` is a structural bound: coefficients below it are exactly zero.
/// Coefficients above `precision` are unknown and asking for one is an error.
class Series1 {
 public:
  Series1(Backend backend, int low, int precision);

  static Series1 zero(Backend backend, int precision);
  static Series1 constant(const Scalar& c, int precision);
  static Series1 monomial(const Scalar& c, int exponent, int precision);

  Backend backend() const noexcept { return backend_; }
  int low() const noexcept { return low_; }
  int precision() const noexcept { return prec_; }
  int pole_order() const noexcept { return low_ < 0 ? -low_ : 0; }

  bool knows(int e) const noexcept { return e <= prec_; }
  Scalar coeff(int e) const;
  void set(int e, const Scalar& c);

  /// Lowest exponent with a coefficient that is not literally zero, or
  /// precision() + 1 when there is none.
  int valuation() const;
  /// Every known coefficient is zero in the backend's sense.
  bool is_zero() const;
  bool equals(const Series1& other) const;

  /// Some coefficient with negative exponent is nonzero.
  bool has_pole_part() const;
  Series1 pole_part() const;
  /// Lowest exponent with a nonzero coefficient among the negative ones, 0 if none.
  int effective_pole_order() const;

  Series1 truncated(int precision) const;
  /// Raise `low` past leading coefficients that vanish.
  Series1 trimmed() const;
  Series1 derivative() const;

  Series1& operator+=(const Series1& rhs);
  Series1& operator-=(const Series1& rhs);
  friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
  friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
  friend Series1 operator*(const Series1& a, const Series1& b);
  friend Series1 operator*(Series1 a, const Scalar& c);
  Series1 operator-() const;

  std::string to_string(const std::string& var = "t") const;

 private:
  Backend backend_;
  int low_;
  int prec_;
  std::vector<Scalar> coeffs_;  // exponents low_ .. prec_
};

}  // namespace symtwo
