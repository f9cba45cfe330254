#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "symtwo/symdiff.hpp"

namespace symtwo {

/// Numerator of the complexified Brioschi curvature of E = a, F = b/2,
/// G = c (u = z1, v = z2): det M1 - det M2. Vanishes exactly when w is
/// closed, for rank-2 w.
Series2 brioschi_numerator(const SymTwoDiff& w);

enum class Verdict { yes, no, inconclusive };
std::string_view to_string(Verdict v);

struct ClosednessReport {
  Series2 numerator;
  Verdict verdict;
  std::string rank_note;
};

ClosednessReport is_closed(const SymTwoDiff& w);

/// g = f(z1) * h(z2), with the constant g(0,0) carried by f.
struct Separation {
  Series1 f;
  Series1 h;
};

struct NotSeparable {
  Series2 residual;  // g - f(z1) h(z2)
};

using DecomposeResult = std::variant<Separation, NotSeparable>;

/// Split a unit g as f(z1) h(z2); NotAUnit unless g(0,0) != 0.
DecomposeResult first_kind_decompose(const Series2& g);

struct Mismatch {
  std::string reason;
};

/// The constant c with eta1 = c mu1 and eta2 = mu2 / c, after matching the
/// factors of the two decompositions by foliation.
std::variant<Scalar, Mismatch> compare_decompositions(const std::pair<OneForm, OneForm>& mus,
                                                      const std::pair<OneForm, OneForm>& etas);

/// f1 mu1 + f2 mu2 = 0 and df_i ^ mu_i = 0 through the guaranteed order.
bool verify_abelian_relation(const std::pair<Series2, Series2>& fs, const std::pair<OneForm, OneForm>& mus);

}  // namespace symtwo
