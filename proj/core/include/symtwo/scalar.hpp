#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace symtwo {

enum class Backend { exact, approx };

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view name);

/// Relative tolerance used by the approximate backend when it decides that a
/// value is zero or that two values agree. Process-wide, default 1e-9.
double tolerance() noexcept;
void set_tolerance(double tau) noexcept;

struct GaussianRational {
  mpq_class re;
  mpq_class im;
};

/// A complex number carried either exactly (pair of GMP rationals) or as a
/// complex double. Arithmetic between the two backends is an error; exact
/// values may be promoted explicitly with to_backend().
class Scalar {
 public:
  Scalar() = default;  // exact zero

  static Scalar exact(const mpq_class& re, const mpq_class& im = 0);
  static Scalar approx(std::complex<double> z);
  static Scalar integer(long n, Backend backend);
  static Scalar rational(long num, long den, Backend backend);
  static Scalar from_rational(const mpq_class& q, Backend backend);
  static Scalar zero(Backend backend) { return integer(0, backend); }
  static Scalar one(Backend backend) { return integer(1, backend); }
  static Scalar imaginary_unit(Backend backend);

  Backend backend() const noexcept;
  bool is_exact() const noexcept { return backend() == Backend::exact; }

  /// Literal zero with no tolerance applied.
  bool is_exact_zero() const;
  /// Zero in the backend's sense: exact equality, or |x| <= tau.
  bool is_zero() const;
  /// Exact equality, or |x - y| <= tau * max(1, |x|, |y|).
  bool equals(const Scalar& other) const;
  bool is_real() const;

  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }
  /// Exact real part / imaginary part; throws on the approx backend.
  const GaussianRational& exact_value() const;
  Scalar to_backend(Backend backend) const;

  /// The value as a rational number when it is an exact real.
  std::optional<mpq_class> as_rational() const;
  std::optional<long> as_integer() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  /// *this += a * b without a temporary on the exact path.
  void add_product(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  Scalar& scale(long n);
  Scalar inverse() const;

  /// Canonical text: "p/q", "p/q+r/s*i", or 17 significant digits per part.
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.equals(b); }

 private:
  using Value = std::variant<GaussianRational, std::complex<double>>;
  explicit Scalar(Value v) : value_(std::move(v)) {}

  Value value_{GaussianRational{}};
};

// Transcendental functions of constants. On the exact backend these succeed
// only when the result is again a Gaussian rational and raise
// ErrorKind::not_representable otherwise. log uses the principal branch.
Scalar exp(const Scalar& x);
Scalar log(const Scalar& x);
Scalar pow(const Scalar& base, const Scalar& exponent);

}  // namespace symtwo
