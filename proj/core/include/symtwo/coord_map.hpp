#pragma once

#include "symtwo/series2.hpp"

namespace symtwo {

/// A formal map (y1, y2) -> (phi1(y), phi2(y)) with phi(0) = 0, used both as
/// a chart change and as a substitution z = phi(y).
class CoordMap {
 public:
  CoordMap(Series2 first, Series2 second);

  static CoordMap identity(Backend backend, int precision);
  static CoordMap linear(const Scalar& a11, const Scalar& a12, const Scalar& a21, const Scalar& a22,
                         int precision);
  /// z1 = y1^degree, z2 = y2.
  static CoordMap ramified_cover(int degree, Backend backend, int precision);

  const Series2& first() const noexcept { return first_; }
  const Series2& second() const noexcept { return second_; }
  Backend backend() const noexcept { return first_.backend(); }
  int precision() const noexcept { return std::min(first_.precision(), second_.precision()); }

  /// Entry d phi_row / d y_col at the origin (row, col in {0, 1}).
  Scalar linear_coefficient(int row, int col) const;
  Scalar jacobian_at_origin() const;
  /// det(d phi / d y) as a series.
  Series2 jacobian_determinant() const;
  /// True when the map is exactly y -> (y1^d, y2) for some d >= 2.
  bool is_ramified_cover() const;

  /// s(phi(y)).
  Series2 apply(const Series2& s) const;
  /// this o inner, i.e. y -> phi(inner(y)).
  CoordMap compose(const CoordMap& inner) const;
  bool equals(const CoordMap& other) const;

 private:
  Series2 first_;
  Series2 second_;
};

/// The inverse map, built degree by degree from the inverse of the linear part.
CoordMap reverse_map(const CoordMap& phi);

}  // namespace symtwo
