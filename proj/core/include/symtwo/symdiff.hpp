#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symtwo/coord_map.hpp"
#include "symtwo/expr.hpp"
#include "symtwo/series2.hpp"

namespace symtwo {

/// A dz1 + B dz2.
struct OneForm {
  Series2 A;
  Series2 B;

  Backend backend() const { return A.backend(); }
  int precision() const { return std::min(A.precision(), B.precision()); }
  bool is_zero() const { return A.is_zero() && B.is_zero(); }
  bool equals(const OneForm& other) const { return A.equals(other.A) && B.equals(other.B); }
  /// d(form) = 0, i.e. dA/dz2 == dB/dz1 through the guaranteed order.
  bool is_closed() const;

  OneForm operator*(const Scalar& c) const { return {A * c, B * c}; }
  OneForm operator*(const Series2& h) const { return {A * h, B * h}; }

  /// The exact form dF.
  static OneForm differential(const Series2& f);
};

/// Coefficient of dz1 ^ dz2 in mu ^ nu.
Series2 wedge(const OneForm& mu, const OneForm& nu);

/// a dz1^2 + b dz1 dz2 + c dz2^2.
struct SymTwoDiff {
  Series2 a;
  Series2 b;
  Series2 c;
  /// Set when the differential was built as a product of two 1-forms.
  std::optional<std::pair<OneForm, OneForm>> factors;

  Backend backend() const { return a.backend(); }
  int precision() const { return std::min({a.precision(), b.precision(), c.precision()}); }
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero(); }
  bool equals(const SymTwoDiff& other) const {
    return a.equals(other.a) && b.equals(other.b) && c.equals(other.c);
  }
  SymTwoDiff operator*(const Series2& h) const { return {a * h, b * h, c * h, std::nullopt}; }
};

SymTwoDiff product(const OneForm& mu, const OneForm& nu);
/// a c - b^2 / 4.
Series2 discriminant(const SymTwoDiff& w);

/// An irreducible curve through the origin: a coordinate axis or {h = 0}
/// for a series h with h(0,0) = 0 and dh(0) != 0.
class Component {
 public:
  static Component axis(Var v, Backend backend, int precision);
  static Component curve(std::string label, Series2 equation);

  const std::string& label() const noexcept { return label_; }
  const std::optional<Var>& axis_var() const noexcept { return axis_; }
  const Series2& equation() const noexcept { return equation_; }

  /// Fail with DivisionFailure unless the discriminant carries this
  /// component at least this often.
  std::optional<int> expected_multiplicity;

 private:
  Component(std::string label, std::optional<Var> axis, Series2 equation)
      : label_(std::move(label)), axis_(axis), equation_(std::move(equation)) {}

  std::string label_;
  std::optional<Var> axis_;
  Series2 equation_;
};

/// Coordinates (y1, y2) in which a component becomes a coordinate axis.
struct Straightening {
  CoordMap to_original;   // z = to_original(y)
  CoordMap from_original; // y = from_original(z)
  Var axis;               // the component is {y_axis = 0}
};

Straightening straighten(const Component& component);

/// Order of vanishing of s along the component.
int multiplicity(const Series2& s, const Component& component);
/// s / h^k, raising DivisionFailure when h^k does not divide s.
Series2 divide_by_component(const Series2& s, const Component& component, int k);

struct MultiplicityRow {
  std::string component;
  int in_discriminant;
  int in_divisorial_zero;  // content of (a, b, c) along the component
  int in_core;             // in_discriminant - 2 * in_divisorial_zero
};

struct CoreDiscriminant {
  Series2 core;
  std::vector<MultiplicityRow> table;
};

CoreDiscriminant core_discriminant(const SymTwoDiff& w, const std::vector<Component>& components);

/// Minimum guaranteed order of a vanishing discriminant before rank 1 is
/// reported instead of Inconclusive.
inline constexpr int kMinRankPrecision = 4;

int rank(const SymTwoDiff& w);

struct Splitting {
  OneForm first;
  OneForm second;
};

/// Certificate that w does not split: the component of odd multiplicity.
struct NotSplit {
  std::string component;
  int multiplicity;
  int suggested_cover_degree;
};

using SplitResult = std::variant<Splitting, NotSplit>;

/// Factor w into two 1-forms. Coordinate axes are always examined; further
/// discriminant components through the origin must be supplied.
SplitResult split(const SymTwoDiff& w, const std::vector<Component>& extra_components = {});

OneForm pullback(const OneForm& mu, const CoordMap& phi);
/// Pullback along an invertible map or a ramified cover z1 = y1^d.
SymTwoDiff pullback(const SymTwoDiff& w, const CoordMap& phi);

enum class Parity { odd, even };             // N / S
enum class Geometry { common_leaf, tangency, none, undecided };  // C / R / - / ?

std::string_view to_string(Parity p);
std::string_view to_string(Geometry g);

struct ComponentClass {
  Parity parity;
  Geometry geometry;
  int disc_multiplicity;
  int core_multiplicity;
  std::string note;  // why geometry is undecided, if it is
};

ComponentClass classify_component(const SymTwoDiff& w, const Component& component);

// --- input forms ---------------------------------------------------------

struct CoefficientForm {
  expr::Expr a, b, c;
};

/// scale * d(u) * d(r).
struct ProductForm {
  expr::Expr scale, u, r;
};

using DifferentialInput = std::variant<CoefficientForm, ProductForm>;

/// Evaluate an input description. In product form u and r are evaluated one
/// order higher so the coefficients keep the requested truncation.
SymTwoDiff expand(const DifferentialInput& input, int truncation, Backend backend);

}  // namespace symtwo
