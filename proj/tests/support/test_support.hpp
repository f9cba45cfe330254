#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "symtwo/coord_map.hpp"
#include "symtwo/expr.hpp"
#include "symtwo/series2.hpp"
#include "symtwo/symdiff.hpp"

namespace symtwo::testing {

struct OracleTerm {
  int i;
  int j;
  const char* c;
};

inline Scalar scalar_of(const std::string& text, Backend backend = Backend::exact) {
  return expr::eval_constant(expr::parse(text), backend);
}

inline Series2 series_of(const std::string& text, int n = kDefaultTruncation, Backend backend = Backend::exact) {
  return expr::eval(expr::parse(text), n, backend);
}

/// Every coefficient of s through `order` equals the listed one (absent
/// terms are zero). Returns a description of the first mismatch, or "".
inline std::string mismatch(const Series2& s, const std::vector<OracleTerm>& terms, int order) {
  for (int d = 0; d <= order; ++d) {
    for (int i = 0; i <= d; ++i) {
      int j = d - i;
      Scalar expected = Scalar::zero(s.backend());
      for (const auto& t : terms) {
        if (t.i == i && t.j == j) expected = scalar_of(t.c, s.backend());
      }
      Scalar got = s.coeff(i, j);
      if (!got.equals(expected)) {
        return "coefficient z1^" + std::to_string(i) + " z2^" + std::to_string(j) + ": got " + got.to_string() +
               ", expected " + expected.to_string();
      }
    }
  }
  return "";
}

/// Hand-rolled generators over a seeded stdlib engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// p/q with |p| <= 5, 1 <= q <= 4.
  Scalar rational(Backend backend, bool nonzero = false) {
    while (true) {
      int p = integer(-5, 5);
      int q = integer(1, 4);
      if (nonzero && p == 0) continue;
      if (backend == Backend::exact) return Scalar::rational(p, q, backend);
      return Scalar::approx({static_cast<double>(p) / q + real(-0.01, 0.01), 0.0});
    }
  }

  /// Random polynomial in z1, z2 with terms of total degree in [lo, hi].
  Series2 poly(Backend backend, int precision, int lo, int hi, double density = 0.6) {
    Series2 s = Series2::zero(backend, precision);
    for (int d = lo; d <= std::min(hi, precision); ++d) {
      for (int i = 0; i <= d; ++i) {
        if (coin(density)) s.set(i, d - i, rational(backend));
      }
    }
    return s;
  }

  /// Polynomial in a single variable, exponents in [lo, hi].
  Series1 poly1(Backend backend, int precision, int lo, int hi, double density = 0.7) {
    Series1 s(backend, std::min(lo, 0), precision);
    for (int e = lo; e <= std::min(hi, precision); ++e) {
      if (coin(density)) s.set(e, rational(backend));
    }
    return s;
  }

  Series2 unit(Backend backend, int precision, int degree = 3) {
    Series2 s = poly(backend, precision, 1, degree);
    return s.plus_constant(rational(backend, true));
  }

  /// Random unit with a genuinely transcendental tail.
  Series2 rich_unit(Backend backend, int precision) {
    Series2 u = unit(backend, precision, 2);
    if (coin()) u = u * exp(poly(backend, precision, 1, 2));
    return u;
  }

  CoordMap invertible_map(Backend backend, int precision, int degree = 3) {
    while (true) {
      Scalar a11 = rational(backend), a12 = rational(backend), a21 = rational(backend), a22 = rational(backend);
      Scalar det = a11 * a22 - a12 * a21;
      if (det.is_zero()) continue;
      CoordMap lin = CoordMap::linear(a11, a12, a21, a22, precision);
      return CoordMap(lin.first() + poly(backend, precision, 2, degree, 0.4),
                      lin.second() + poly(backend, precision, 2, degree, 0.4));
    }
  }

  SymTwoDiff differential(Backend backend, int precision) {
    return {poly(backend, precision, 0, 3), poly(backend, precision, 0, 3), poly(backend, precision, 0, 3),
            std::nullopt};
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace symtwo::testing
