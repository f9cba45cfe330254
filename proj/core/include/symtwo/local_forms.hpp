#pragma once

#include <complex>
#include <optional>
#include <string>

#include "symtwo/coord_map.hpp"
#include "symtwo/symdiff.hpp"

namespace symtwo {

/// Data of the chart that brings h dv1 dr, r = v1 u, to the normal form
/// fout dz1 d[z1 (1 + z1^m z2)].
struct NormalFormData {
  int m;
  Series1 s;      // unit in v1
  Series1 t;      // t(0) = 0, t'(0) != 0
  Series2 gcorr;  // u = s + v1^m (t + v1 gcorr)
  CoordMap chart; // (v1, v2) -> (z1, z2)
  Series2 fout;   // conformal factor in v-coordinates
  Series2 fout_z; // the same factor in z-coordinates
  bool chart_verified;
};

/// ord_z1(dr/dz2) - 1 for r = z1 * unit.
int order_of_contact(const Series2& r);

NormalFormData lemma25_chart(const Series2& h, const Series2& r);

/// Product-form entry point: w = scale du dr. The base point is moved by
/// z2 -> z2 + base_shift before evaluation, and coordinates are straightened
/// so that u becomes the first one when u is not already z1.
NormalFormData lemma25_chart(const ProductForm& w, int truncation, Backend backend, const expr::Expr& base_shift);

/// Decomposition of v dz1 d[z1 (1 + z1^m z2)] as
/// constant * z1^k (1 + z1^m z2)^alpha e^f(z1) e^g(p), p = z1 (1 + z1^m z2).
struct Theorem26Data {
  int m;
  int k;
  Scalar alpha;
  /// v~(0,0) when its logarithm is not representable on the backend;
  /// otherwise 1 with the logarithm carried by f's constant term.
  Scalar constant;
  Series1 f;
  Series1 g;  // g_0 = 0
  Series2 residual;
  bool residual_zero;
};

Theorem26Data theorem26_solve(const Series2& v, int m);

enum class MonodromyOrder { trivial, finite, infinite };
std::string_view to_string(MonodromyOrder o);

struct MonodromyIndex {
  Scalar alpha;
  std::complex<double> c;      // e^(2 pi i alpha)
  std::complex<double> c_inv;
  std::optional<Scalar> exact_c;  // when c is a Gaussian rational (1, -1, i, -i)
  MonodromyOrder order;
  long n;          // order of c when finite, 1 when trivial, 0 when infinite
  bool heuristic;  // decided from floating point data
};

/// Largest denominator accepted when reconstructing a rational from a
/// double: below 1/sqrt(2 tau) a convergent within tau is a real signal.
long rational_denominator_bound();

MonodromyIndex monodromy_index(const Scalar& alpha);

enum class Singularity { none, meromorphic, essential };
std::string_view to_string(Singularity s);

struct LeafClass {
  bool first_kind;
  Singularity singularity;
  MonodromyIndex monodromy;
  bool in_breakdown;
};

LeafClass classify_leaf(const Theorem26Data& d);

}  // namespace symtwo
