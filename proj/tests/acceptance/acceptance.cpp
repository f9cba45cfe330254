// One pass/fail line per acceptance criterion; nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symtwo/closedness.hpp"
#include "symtwo/error.hpp"
#include "symtwo/local_forms.hpp"
#include "symtwo/symdiff.hpp"
#include "test_support.hpp"

using namespace symtwo;
using namespace symtwo::testing;

namespace {

constexpr Backend kExact = Backend::exact;
constexpr Backend kApprox = Backend::approx;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Series1 laurent(Backend be, int low, int prec, std::initializer_list<std::pair<int, const char*>> terms) {
  Series1 s(be, low, prec);
  for (auto [e, c] : terms) s.set(e, scalar_of(c, be));
  return s;
}

Series2 contact_base(int m, Backend be, int n) {
  return Series2::monomial(Scalar::one(be), m, 1, n).plus_constant(Scalar::one(be));
}

bool is_splitting(const SplitResult& r) { return std::holds_alternative<Splitting>(r); }

// --- 1 --------------------------------------------------------------------

Check essential_singularity() {
  Check ck;
  auto start = std::chrono::steady_clock::now();
  Theorem26Data d = theorem26_solve(series_of("exp(z2/(1+z1*z2))", 12), 1);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ck.require(d.k == 0, "k = " + std::to_string(d.k));
  ck.require(d.alpha.is_exact_zero(), "alpha = " + d.alpha.to_string());
  ck.require(d.f.equals(laurent(kExact, -1, d.f.precision(), {{-1, "1"}})), "f = " + d.f.to_string("z1"));
  ck.require(d.g.equals(laurent(kExact, -1, d.g.precision(), {{-1, "-1"}})), "g = " + d.g.to_string("p"));
  ck.require(d.constant.equals(Scalar::one(kExact)), "constant = " + d.constant.to_string());
  ck.require(d.residual_zero, "residual nonzero");
  ck.require(seconds < 1.0, "took " + std::to_string(seconds) + " s");
  if (ck.ok) {
    std::ostringstream os;
    os << "k=0 alpha=0 f=z1^-1 g=-p^-1 residual=0 in " << std::fixed << seconds * 1000 << " ms";
    ck.detail = os.str();
  }
  return ck;
}

// --- 2 --------------------------------------------------------------------

Check monodromy() {
  Check ck;
  Theorem26Data half = theorem26_solve(series_of("(1+z2)^(1/2)", 12), 0);
  ck.require(half.residual_zero, "alpha = 1/2: residual nonzero");
  ck.require(half.alpha.equals(Scalar::rational(1, 2, kExact)), "alpha = " + half.alpha.to_string());
  MonodromyIndex mh = monodromy_index(half.alpha);
  ck.require(mh.exact_c && mh.exact_c->equals(Scalar::integer(-1, kExact)), "c != -1");
  ck.require(mh.order == MonodromyOrder::finite && mh.n == 2, "order is not finite 2");
  ck.require(!mh.heuristic, "exact case flagged heuristic");

  Series2 v = pow(series_of("1+z2", 12, kApprox), Scalar::approx(std::sqrt(2.0)));
  Theorem26Data root2 = theorem26_solve(v, 0);
  ck.require(root2.residual_zero, "alpha = sqrt 2: residual nonzero");
  ck.require(std::abs(root2.alpha.to_complex() - std::sqrt(2.0)) <= tolerance() * std::sqrt(2.0),
             "alpha = " + root2.alpha.to_string());
  MonodromyIndex mr = monodromy_index(root2.alpha);
  ck.require(mr.order == MonodromyOrder::infinite, "sqrt 2 not infinite");
  ck.require(mr.heuristic, "sqrt 2 not flagged heuristic");
  if (ck.ok) ck.detail = "alpha=1/2 -> c=-1 order 2; alpha=sqrt2 (approx) -> infinite, flagged";
  return ck;
}

// --- 3 --------------------------------------------------------------------

Check meromorphic() {
  Check ck;
  const int n = 12;
  SymTwoDiff w{series_of("1", n, kApprox), series_of("z1*z2", n, kApprox), Series2::zero(kApprox, n), std::nullopt};
  SplitResult sr = split(w);
  ck.require(is_splitting(sr), "w did not split");
  if (!ck.ok) return ck;
  const Splitting& s = std::get<Splitting>(sr);

  // Second factor dz1 + z1 z2 dz2 = e^{-z2^2/2} d(z1 e^{z2^2/2}).
  ProductForm pf{expr::parse("exp(-z2^2/2)"), expr::parse("z1"), expr::parse("z1*exp(z2^2/2)")};
  SymTwoDiff rebuilt = expand(pf, n, kApprox);
  ck.require(rebuilt.equals(w), "product form does not expand to w");
  OneForm du = OneForm::differential(series_of("z1", n, kApprox));
  OneForm dr = OneForm::differential(series_of("z1*exp(z2^2/2)", n, kApprox));
  bool matches = (wedge(s.first, du).is_zero() && wedge(s.second, dr).is_zero()) ||
                 (wedge(s.first, dr).is_zero() && wedge(s.second, du).is_zero());
  ck.require(matches, "split factors are not the foliations of the product form");

  bool degenerate = false;
  try {
    lemma25_chart(pf, n, kApprox, expr::parse("0"));
  } catch (const Error& e) {
    degenerate = e.kind() == ErrorKind::degenerate_base_point;
  }
  ck.require(degenerate, "base point 0 not reported degenerate");

  NormalFormData nf = lemma25_chart(pf, n, kApprox, expr::parse("1"));
  ck.require(nf.chart_verified, "chart not verified at base_shift 1");
  Theorem26Data d = theorem26_solve(nf.fout_z, nf.m);
  ck.require(d.residual_zero, "residual nonzero");
  LeafClass lc = classify_leaf(d);
  ck.require(lc.singularity == Singularity::meromorphic, "singularity " + std::string(to_string(lc.singularity)));
  ck.require(lc.monodromy.order == MonodromyOrder::trivial, "monodromy " + std::string(to_string(lc.monodromy.order)));
  ck.require(lc.in_breakdown, "not in breakdown");
  ck.require(!lc.first_kind, "reported first kind");
  if (ck.ok) {
    ck.detail = "m=" + std::to_string(nf.m) + " alpha=" + d.alpha.to_string() +
                " -> meromorphic, trivial monodromy, in_breakdown, not first kind";
  }
  return ck;
}

// --- 4 --------------------------------------------------------------------

Check non_split() {
  Check ck;
  const int n = 12;
  SymTwoDiff w{series_of("z1", n), Series2::zero(kExact, n), series_of("-1", n), std::nullopt};
  SplitResult sr = split(w);
  const auto* ns = std::get_if<NotSplit>(&sr);
  ck.require(ns != nullptr, "w split on the base");
  if (!ck.ok) return ck;
  ck.require(ns->component == "z1" && ns->multiplicity == 1 && ns->suggested_cover_degree == 2,
             "witness " + ns->component + " multiplicity " + std::to_string(ns->multiplicity));

  SymTwoDiff up = pullback(w, CoordMap::ramified_cover(2, kExact, n));
  SplitResult su = split(up);
  ck.require(is_splitting(su), "no splitting after the cover");
  if (!ck.ok) return ck;
  const Splitting& s = std::get<Splitting>(su);
  ck.require(product(s.first, s.second).equals(up), "factors do not multiply back");
  ck.require(s.first.is_closed() && s.second.is_closed(), "a factor is not closed");
  if (ck.ok) ck.detail = "NotSplit at z1 (multiplicity 1); after z1 <- s^2 both factors closed";
  return ck;
}

// --- 5 --------------------------------------------------------------------

SymTwoDiff mixed(const Series2& g) {
  Backend be = g.backend();
  return {Series2::zero(be, g.precision()), g, Series2::zero(be, g.precision()), std::nullopt};
}

Check separability() {
  Check ck;
  Gen gen(5);
  const int n = 10;
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 100; ++t) {
    Series1 a = gen.poly1(kExact, n, 1, 4);
    a.set(0, gen.rational(kExact, true));
    Series1 b = gen.poly1(kExact, n, 1, 4);
    b.set(0, gen.rational(kExact, true));
    Series2 g = Series2::embed(a, Var::z1) * Series2::embed(b, Var::z2);
    if (gen.coin()) g = g * exp(Series2::embed(gen.poly1(kExact, n, 1, 2), Var::z2));
    bool brioschi = brioschi_numerator(mixed(g)).is_zero();
    DecomposeResult r = first_kind_decompose(g);
    const auto* sep = std::get_if<Separation>(&r);
    bool recon = sep && (Series2::embed(sep->f, Var::z1) * Series2::embed(sep->h, Var::z2)).equals(g);
    if (brioschi && recon) ++accepted;
    else ck.require(false, "separable instance " + std::to_string(t) + " rejected");
  }
  for (int t = 0; t < 100; ++t) {
    Series1 a = gen.poly1(kExact, n, 1, 3);
    a.set(0, gen.rational(kExact, true));
    Series1 b = gen.poly1(kExact, n, 1, 3);
    b.set(0, gen.rational(kExact, true));
    int i = gen.integer(1, 3), j = gen.integer(1, 3);
    // The z1^(i-1) z2^(j-1) coefficient of g g12 - g1 g2 is i j c a0 b0 != 0.
    Series2 g = Series2::embed(a, Var::z1) * Series2::embed(b, Var::z2) +
                Series2::monomial(gen.rational(kExact, true), i, j, n);
    bool brioschi = brioschi_numerator(mixed(g)).is_zero();
    bool decomposed = std::holds_alternative<Separation>(first_kind_decompose(g));
    if (!brioschi && !decomposed) ++rejected;
    else ck.require(false, "non-separable instance " + std::to_string(t) + " accepted");
  }
  if (ck.ok) ck.detail = std::to_string(accepted) + "/100 separable accepted, " + std::to_string(rejected) +
                         "/100 non-separable rejected";
  return ck;
}

// --- 6 --------------------------------------------------------------------

// Holomorphic part of random degree <= 3 with zero constant; pole part up to m.
Series1 random_laurent(Gen& gen, Backend be, int m, int prec) {
  Series1 s(be, -m, prec);
  for (int e = -m; e <= 3; ++e) {
    if (e != 0 && gen.coin(0.7)) s.set(e, gen.rational(be));
  }
  return s;
}

Check roundtrip() {
  Check ck;
  Gen gen(6);
  const int n = 12;
  int passed = 0;
  for (int t = 0; t < 200; ++t) {
    Backend be = t % 4 == 3 ? kApprox : kExact;
    int m = t % 4;
    int k = gen.integer(0, 2);
    Scalar alpha = be == kExact ? gen.rational(be) : Scalar::approx({gen.real(-2.0, 2.0), 0.0});
    Series1 f = random_laurent(gen, be, m, n);
    Series1 g(be, -m, n);
    for (int e = 1; e <= 3; ++e) {
      if (gen.coin(0.7)) g.set(e, gen.rational(be));
    }
    for (int i = 1; i <= m; ++i) g.set(-i, -f.coeff(-i));  // matched pole parts

    Series2 base = contact_base(m, be, n + 1);
    Series2 p = base.shifted_z1(1);
    Series2 exponent = (Series2::embed(f, Var::z1) + substitute(g, p)).trimmed();
    std::string label = "instance " + std::to_string(t) + " (m=" + std::to_string(m) + ")";
    if (exponent.low() < 0) {
      ck.require(false, label + ": exponent kept a pole");
      continue;
    }
    Series2 v = (pow(base, alpha) * exp(exponent)).truncated(n).shifted_z1(k);

    Theorem26Data d = theorem26_solve(v, m);
    bool ok = d.residual_zero && d.k == k && d.m == m && d.alpha.equals(alpha) &&
              d.constant.equals(Scalar::one(be)) && d.f.equals(f.truncated(d.f.precision())) &&
              d.g.equals(g.truncated(d.g.precision())) && d.f.effective_pole_order() <= m &&
              d.g.effective_pole_order() <= m;
    if (ok) ++passed;
    else ck.require(false, label + ": not recovered (alpha " + d.alpha.to_string() + " vs " + alpha.to_string() + ")");
  }
  if (ck.ok) ck.detail = std::to_string(passed) + "/200 recovered (k, alpha, f, g), pole orders <= m";
  return ck;
}

// --- 7 --------------------------------------------------------------------

Check brioschi_identity() {
  Check ck;
  Gen gen(7);
  const int n = 10;
  Scalar eighth = Scalar::rational(1, 8, kExact);
  for (int t = 0; t < 100; ++t) {
    Series2 g = gen.rich_unit(kExact, n);
    Series2 g1 = g.derivative(Var::z1), g2 = g.derivative(Var::z2);
    Series2 expected = -(g * eighth) * (g * g1.derivative(Var::z2) - g1 * g2);
    Series2 got = brioschi_numerator(mixed(g));
    ck.require(got.equals(expected), "unit " + std::to_string(t) + ": numerator differs");
  }
  for (int t = 0; t < 100; ++t) {
    Series2 f1 = gen.poly(kExact, n, 1, 4), f2 = gen.poly(kExact, n, 1, 4);
    SymTwoDiff w = product(OneForm::differential(f1), OneForm::differential(f2));
    ck.require(brioschi_numerator(w).is_zero(), "exact pair " + std::to_string(t) + ": numerator nonzero");
  }
  if (ck.ok) ck.detail = "100 units match -(g/8)(g g12 - g1 g2); 100 products of exact forms vanish";
  return ck;
}

// --- 8 --------------------------------------------------------------------

Check functoriality() {
  Check ck;
  Gen gen(8);
  const int n = 8;
  for (int t = 0; t < 50; ++t) {
    SymTwoDiff w = gen.differential(kExact, n);
    CoordMap phi = gen.invertible_map(kExact, n);
    Series2 jac = phi.jacobian_determinant();
    Series2 lhs = discriminant(pullback(w, phi));
    Series2 rhs = jac * jac * phi.apply(discriminant(w));
    ck.require(lhs.equals(rhs), "pair " + std::to_string(t) + ": discriminants differ");
  }
  if (ck.ok) ck.detail = "50/50 pairs: disc(phi* w) = (det J)^2 (disc w) o phi";
  return ck;
}

// --- 9 --------------------------------------------------------------------

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  out += "\nstatus " + std::to_string(status);
  return out;
}

Check determinism() {
  Check ck;
  const std::string bin = SYMTWO_CLI_PATH;
  const std::string jobs = SYMTWO_JOBS_DIR;
  const std::vector<std::pair<std::string, std::string>> runs{
      {"theorem26", "essential.json"},  {"monodromy", "monodromy_half.json"}, {"monodromy", "monodromy_sqrt2.json"},
      {"classify", "meromorphic.json"}, {"split", "non_split.json"},          {"split", "non_split_cover.json"}};
  for (const auto& [cmd, job] : runs) {
    std::string line = "'" + bin + "' " + cmd + " --input '" + jobs + "/" + job + "' 2>&1";
    std::string first = capture(line);
    ck.require(first.find("\"exit_code\"") != std::string::npos, cmd + " " + job + ": no report");
    for (int rep = 1; rep < 3; ++rep) ck.require(capture(line) == first, cmd + " " + job + ": reports differ");
  }
  if (ck.ok) ck.detail = std::to_string(runs.size()) + " jobs x 3 runs byte-identical";
  return ck;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"essential singularity", essential_singularity},
      {"monodromy", monodromy},
      {"meromorphic pipeline", meromorphic},
      {"non-split and cover", non_split},
      {"separability equivalence", separability},
      {"normal form roundtrip", roundtrip},
      {"curvature numerator identity", brioschi_identity},
      {"discriminant functoriality", functoriality},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check ck;
    try {
      ck = criteria[i].second();
    } catch (const std::exception& e) {
      ck.ok = false;
      ck.detail = std::string("threw ") + e.what();
    }
    if (!ck.ok) ++failures;
    std::cout << (ck.ok ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first << ": " << ck.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
