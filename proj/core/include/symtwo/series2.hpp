#pragma once

#include <string>
#include <vector>

#include "symtwo/scalar.hpp"
#include "symtwo/series1.hpp"

namespace symtwo {

enum class Var { z1, z2 };

/// Default truncation order for the series engine.
inline constexpr int kDefaultTruncation = 16;

/// Truncated bivariate series sum c_ij z1^i z2^j, Laurent in z1 only.
///
/// Every coefficient with i + j <= precision() is known. Coefficients with
/// i < low() are structurally zero; anything else is unknown and requesting
/// it throws ErrorKind::precision. Arithmetic propagates the guaranteed order:
/// a product of a and b is known through min(N_a + v_b, N_b + v_a) where v is
/// the total-degree valuation.
class Series2 {
 public:
  Series2(Backend backend, int low, int precision);

  static Series2 zero(Backend backend, int precision);
  static Series2 constant(const Scalar& c, int precision);
  static Series2 monomial(const Scalar& c, int i, int j, int precision);
  static Series2 variable(Var v, Backend backend, int precision);
  /// Embed a univariate series as a function of one variable.
  static Series2 embed(const Series1& s, Var v);

  Backend backend() const noexcept { return backend_; }
  int low() const noexcept { return low_; }
  int precision() const noexcept { return prec_; }
  int pole_order() const noexcept { return low_ < 0 ? -low_ : 0; }

  bool knows(int i, int j) const noexcept { return i + j <= prec_; }
  Scalar coeff(int i, int j) const;
  void set(int i, int j, const Scalar& c);
  void add_to(int i, int j, const Scalar& c);

  /// Lowest total degree carrying a coefficient that is not literally zero,
  /// or precision() + 1 when there is none.
  int valuation() const;
  bool is_zero() const;
  /// Coefficient-wise agreement through the smaller of the two guarantees.
  bool equals(const Series2& other) const;
  /// c00 is nonzero and there is no pole part.
  bool is_unit() const;

  Series2 truncated(int precision) const;
  /// Raise low() past leading z1-rows whose known coefficients vanish.
  Series2 trimmed() const;
  /// Multiply by z1^k (k may be negative). The guarantee moves by k.
  Series2 shifted_z1(int k) const;
  /// Exact division by z2^k; the low z2-columns must vanish.
  Series2 divided_by_z2_power(int k) const;

  Series2 derivative(Var v) const;
  /// Degree-d homogeneous part.
  Series2 homogeneous_part(int degree) const;

  Series1 restrict_z2_zero() const;  // s(z1, 0)
  Series1 restrict_z1_zero() const;  // s(0, z2)

  Series2& operator+=(const Series2& rhs);
  Series2& operator-=(const Series2& rhs);
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
  friend Series2 operator*(const Series2& a, const Series2& b);
  friend Series2 operator*(Series2 a, const Scalar& c);
  friend Series2 operator*(const Scalar& c, Series2 a) { return std::move(a) * c; }
  Series2 operator-() const;
  Series2 plus_constant(const Scalar& c) const;

  template <typename F>
  void for_each_known(F&& f) const {
    for (int i = low_; i <= prec_; ++i) {
      for (int j = 0; i + j <= prec_; ++j) f(i, j, coeffs_[index(i, j)]);
    }
  }

  std::string to_string() const;

 private:
  std::size_t index(int i, int j) const noexcept {
    auto r = static_cast<std::size_t>(i - low_);
    auto width = static_cast<std::size_t>(prec_ - low_ + 1);
    return r * width - r * (r - 1) / 2 + static_cast<std::size_t>(j);
  }

  Backend backend_;
  int low_;
  int prec_;
  std::vector<Scalar> coeffs_;
};

Series2 invert_unit(const Series2& u);
/// 1/b for b = z1^k * unit.
Series2 reciprocal(const Series2& b);
/// a/b for b = z1^k * unit; DivisionByNonUnit otherwise.
Series2 divide(const Series2& a, const Series2& b);

Series2 pow(const Series2& s, long n);
Series2 pow(const Series2& u, const Scalar& exponent);
Series2 exp(const Series2& s);
Series2 log(const Series2& u);
Series2 sqrt(const Series2& u);

/// Least exponent of the axis variable appearing with a nonzero coefficient.
int ord_along_axis(const Series2& s, Var axis);

/// g(p) for a univariate Laurent series g and p with p(0,0) = 0. When g has a
/// pole part, p must be z1 times a unit.
Series2 substitute(const Series1& g, const Series2& p);
/// f(p) for univariate series, p(0) = 0; f may have poles when p = t * unit.
Series1 substitute(const Series1& f, const Series1& p);

struct Term {
  int i;
  int j;
  Scalar c;
};

/// Nonzero terms ordered by total degree, then by descending z1 exponent.
std::vector<Term> leading_terms(const Series2& s, std::size_t count);

}  // namespace symtwo
