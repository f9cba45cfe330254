#include "symtwo/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

#include "symtwo/error.hpp"

namespace symtwo {

namespace {

std::atomic<double> g_tolerance{1e-9};

[[noreturn]] void mismatch() {
  throw Error(ErrorKind::backend_mismatch, "exact and approximate scalars cannot be mixed");
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Exact b-th root of a non-negative integer, if one exists.
std::optional<mpz_class> exact_root(const mpz_class& n, unsigned long b) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), b) == 0) return std::nullopt;
  return r;
}

Scalar exact_integer_power(Scalar base, long e) {
  Backend backend = base.backend();
  if (e < 0) {
    base = base.inverse();
    e = -e;
  }
  Scalar result = Scalar::one(backend);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::exact ? "exact" : "approx";
}

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::exact;
  if (name == "approx") return Backend::approx;
  throw Error(ErrorKind::invalid_input, "unknown backend '" + std::string(name) + "'");
}

double tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }
void set_tolerance(double tau) noexcept { g_tolerance.store(tau, std::memory_order_relaxed); }

Scalar Scalar::exact(const mpq_class& re, const mpq_class& im) {
  GaussianRational g{re, im};
  g.re.canonicalize();
  g.im.canonicalize();
  return Scalar(Value(std::move(g)));
}

Scalar Scalar::approx(std::complex<double> z) { return Scalar(Value(z)); }

Scalar Scalar::integer(long n, Backend backend) {
  if (backend == Backend::exact) return Scalar(Value(GaussianRational{mpq_class(n), mpq_class(0)}));
  return approx({static_cast<double>(n), 0.0});
}

Scalar Scalar::rational(long num, long den, Backend backend) {
  return from_rational(mpq_class(num, den), backend);
}

Scalar Scalar::from_rational(const mpq_class& q, Backend backend) {
  if (backend == Backend::exact) return exact(q);
  return approx({q.get_d(), 0.0});
}

Scalar Scalar::imaginary_unit(Backend backend) {
  if (backend == Backend::exact) return exact(0, 1);
  return approx({0.0, 1.0});
}

Backend Scalar::backend() const noexcept {
  return std::holds_alternative<GaussianRational>(value_) ? Backend::exact : Backend::approx;
}

bool Scalar::is_exact_zero() const {
  if (auto* g = std::get_if<GaussianRational>(&value_)) return sgn(g->re) == 0 && sgn(g->im) == 0;
  auto z = std::get<std::complex<double>>(value_);
  return z.real() == 0.0 && z.imag() == 0.0;
}

bool Scalar::is_zero() const {
  if (is_exact()) return is_exact_zero();
  return std::abs(std::get<std::complex<double>>(value_)) <= tolerance();
}

bool Scalar::equals(const Scalar& other) const {
  if (backend() != other.backend()) mismatch();
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    const auto& h = std::get<GaussianRational>(other.value_);
    return g->re == h.re && g->im == h.im;
  }
  auto x = std::get<std::complex<double>>(value_);
  auto y = std::get<std::complex<double>>(other.value_);
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tolerance() * scale;
}

bool Scalar::is_real() const {
  if (auto* g = std::get_if<GaussianRational>(&value_)) return sgn(g->im) == 0;
  return std::abs(std::get<std::complex<double>>(value_).imag()) <= tolerance();
}

std::complex<double> Scalar::to_complex() const {
  if (auto* g = std::get_if<GaussianRational>(&value_)) return {g->re.get_d(), g->im.get_d()};
  return std::get<std::complex<double>>(value_);
}

const GaussianRational& Scalar::exact_value() const {
  if (auto* g = std::get_if<GaussianRational>(&value_)) return *g;
  throw Error(ErrorKind::backend_mismatch, "exact value requested from an approximate scalar");
}

Scalar Scalar::to_backend(Backend target) const {
  if (target == backend()) return *this;
  if (target == Backend::approx) return approx(to_complex());
  throw Error(ErrorKind::not_representable, "an approximate scalar cannot be made exact");
}

std::optional<mpq_class> Scalar::as_rational() const {
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    if (sgn(g->im) == 0) return g->re;
  }
  return std::nullopt;
}

std::optional<long> Scalar::as_integer() const {
  auto q = as_rational();
  if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p()) return std::nullopt;
  return q->get_num().get_si();
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (backend() != rhs.backend()) mismatch();
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    const auto& h = std::get<GaussianRational>(rhs.value_);
    g->re += h.re;
    g->im += h.im;
  } else {
    std::get<std::complex<double>>(value_) += std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (backend() != rhs.backend()) mismatch();
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    const auto& h = std::get<GaussianRational>(rhs.value_);
    g->re -= h.re;
    g->im -= h.im;
  } else {
    std::get<std::complex<double>>(value_) -= std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (backend() != rhs.backend()) mismatch();
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    const auto& h = std::get<GaussianRational>(rhs.value_);
    if (sgn(g->im) == 0 && sgn(h.im) == 0) {
      g->re *= h.re;
    } else {
      mpq_class re = g->re * h.re - g->im * h.im;
      mpq_class im = g->re * h.im + g->im * h.re;
      g->re = std::move(re);
      g->im = std::move(im);
    }
  } else {
    std::get<std::complex<double>>(value_) *= std::get<std::complex<double>>(rhs.value_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_exact_zero()) throw Error(ErrorKind::not_a_unit, "division by zero scalar");
  return *this *= rhs.inverse();
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  if (backend() != a.backend() || backend() != b.backend()) mismatch();
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    const auto& x = std::get<GaussianRational>(a.value_);
    const auto& y = std::get<GaussianRational>(b.value_);
    if (sgn(x.im) == 0 && sgn(y.im) == 0) {
      g->re += x.re * y.re;
    } else {
      g->re += x.re * y.re - x.im * y.im;
      g->im += x.re * y.im + x.im * y.re;
    }
  } else {
    std::get<std::complex<double>>(value_) +=
        std::get<std::complex<double>>(a.value_) * std::get<std::complex<double>>(b.value_);
  }
}

Scalar Scalar::operator-() const {
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    return Scalar(Value(GaussianRational{-g->re, -g->im}));
  }
  return approx(-std::get<std::complex<double>>(value_));
}

Scalar& Scalar::scale(long n) {
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    g->re *= n;
    g->im *= n;
  } else {
    std::get<std::complex<double>>(value_) *= static_cast<double>(n);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_exact_zero()) throw Error(ErrorKind::not_a_unit, "inverse of zero scalar");
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    if (sgn(g->im) == 0) return exact(1 / g->re);
    mpq_class norm = g->re * g->re + g->im * g->im;
    return exact(g->re / norm, -g->im / norm);
  }
  return approx(1.0 / std::get<std::complex<double>>(value_));
}

std::string Scalar::to_string() const {
  std::string re, im;
  bool re_zero, im_zero, im_negative;
  if (auto* g = std::get_if<GaussianRational>(&value_)) {
    re = g->re.get_str();
    mpq_class magnitude = g->im;
    if (sgn(magnitude) < 0) magnitude = -magnitude;
    im = magnitude.get_str();
    re_zero = sgn(g->re) == 0;
    im_zero = sgn(g->im) == 0;
    im_negative = sgn(g->im) < 0;
  } else {
    auto z = std::get<std::complex<double>>(value_);
    re = format_double(z.real());
    im = format_double(std::abs(z.imag()));
    re_zero = z.real() == 0.0;
    im_zero = z.imag() == 0.0;
    im_negative = z.imag() < 0.0;
  }
  if (im_zero) return re;
  std::string imag = (im == "1" ? std::string("i") : im + "*i");
  if (re_zero) return (im_negative ? "-" : "") + imag;
  return re + (im_negative ? "-" : "+") + imag;
}

Scalar exp(const Scalar& x) {
  if (x.is_exact()) {
    if (x.is_exact_zero()) return Scalar::one(Backend::exact);
    throw Error(ErrorKind::not_representable, "exp(" + x.to_string() + ") is not a Gaussian rational");
  }
  return Scalar::approx(std::exp(x.to_complex()));
}

Scalar log(const Scalar& x) {
  if (x.is_exact_zero()) throw Error(ErrorKind::not_a_unit, "log of zero");
  if (x.is_exact()) {
    if (x.equals(Scalar::one(Backend::exact))) return Scalar::zero(Backend::exact);
    throw Error(ErrorKind::not_representable, "log(" + x.to_string() + ") is not a Gaussian rational");
  }
  return Scalar::approx(std::log(x.to_complex()));
}

Scalar pow(const Scalar& base, const Scalar& exponent) {
  if (!base.is_exact()) {
    Scalar e = exponent.to_backend(Backend::approx);
    if (base.is_exact_zero()) {
      if (e.to_complex().real() > 0) return Scalar::zero(Backend::approx);
      throw Error(ErrorKind::not_a_unit, "non-positive power of zero");
    }
    return Scalar::approx(std::pow(base.to_complex(), e.to_complex()));
  }
  if (!exponent.is_exact()) {
    throw Error(ErrorKind::not_representable, "approximate exponent applied to an exact base");
  }
  auto q = exponent.as_rational();
  if (!q) throw Error(ErrorKind::not_representable, "complex exponent on the exact backend");
  if (base.is_exact_zero()) {
    if (sgn(*q) > 0) return Scalar::zero(Backend::exact);
    throw Error(ErrorKind::not_a_unit, "non-positive power of zero");
  }
  if (q->get_den() == 1) {
    if (!q->get_num().fits_slong_p()) throw Error(ErrorKind::invalid_input, "exponent too large");
    return exact_integer_power(base, q->get_num().get_si());
  }
  const auto& g = base.exact_value();
  const mpz_class& a = q->get_num();
  const mpz_class& b = q->get_den();
  if (sgn(g.im) == 0 && b.fits_ulong_p() && a.fits_slong_p()) {
    unsigned long root_degree = b.get_ui();
    mpq_class magnitude = abs(g.re);
    auto num = exact_root(magnitude.get_num(), root_degree);
    auto den = exact_root(magnitude.get_den(), root_degree);
    if (num && den) {
      Scalar root = Scalar::exact(mpq_class(*num, *den));
      Scalar result = exact_integer_power(root, a.get_si());
      if (sgn(g.re) > 0) return result;
      // Principal branch of a negative base: arg = pi, so (-x)^(a/2) = x^(a/2) * i^a.
      if (root_degree == 2) {
        return result * exact_integer_power(Scalar::imaginary_unit(Backend::exact), a.get_si());
      }
    }
  }
  throw Error(ErrorKind::not_representable,
              "(" + base.to_string() + ")^(" + exponent.to_string() + ") is not a Gaussian rational");
}

}  // namespace symtwo
