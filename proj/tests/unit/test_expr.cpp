#include <gtest/gtest.h>

#include "symtwo/error.hpp"
#include "symtwo/expr.hpp"
#include "test_support.hpp"
#include "oracle/oracle_values.inc"

using namespace symtwo;
using namespace symtwo::testing;

namespace {

constexpr Backend kExact = Backend::exact;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::invalid_input;
}

std::string random_expr(Gen& gen, int depth) {
  if (depth == 0 || gen.coin(0.3)) {
    switch (gen.integer(0, 3)) {
      case 0: return "z1";
      case 1: return "z2";
      case 2: return std::to_string(gen.integer(1, 9));
      default: return std::to_string(gen.integer(1, 9)) + "/" + std::to_string(gen.integer(1, 9));
    }
  }
  switch (gen.integer(0, 6)) {
    case 0: return "(" + random_expr(gen, depth - 1) + " + " + random_expr(gen, depth - 1) + ")";
    case 1: return random_expr(gen, depth - 1) + " - " + random_expr(gen, depth - 1);
    case 2: return random_expr(gen, depth - 1) + "*" + random_expr(gen, depth - 1);
    case 3: return "-" + random_expr(gen, depth - 1);
    case 4: return "(" + random_expr(gen, depth - 1) + ")^" + std::to_string(gen.integer(0, 3));
    case 5: return "exp(z1*(" + random_expr(gen, depth - 1) + "))";
    default: return "(1 + z2)^(" + std::to_string(gen.integer(-3, 3)) + "/" + std::to_string(gen.integer(1, 4)) + ")";
  }
}

}  // namespace

TEST(Expr, ParsesPowerOverSum) {
  expr::Expr e = expr::parse("(1+z2)^(1/2)");
  const auto* pw = std::get_if<expr::Power>(&e.root().value);
  ASSERT_NE(pw, nullptr);
  EXPECT_EQ(pw->exponent.value, mpq_class(1, 2));
  const auto* sum = std::get_if<expr::Binary>(&pw->base->value);
  ASSERT_NE(sum, nullptr);
  EXPECT_EQ(sum->op, '+');
}

TEST(Expr, ParsesExpOverQuotient) {
  expr::Expr e = expr::parse("exp(z2/(1+z1*z2))");
  const auto* call = std::get_if<expr::Call>(&e.root().value);
  ASSERT_NE(call, nullptr);
  EXPECT_EQ(call->func, expr::Func::exp);
  const auto* quot = std::get_if<expr::Binary>(&call->arg->value);
  ASSERT_NE(quot, nullptr);
  EXPECT_EQ(quot->op, '/');
}

TEST(Expr, Precedence) {
  EXPECT_EQ(expr::print(expr::parse("-z1^2")), "-z1^2");
  EXPECT_TRUE(series_of("-z1^2", 4).equals(series_of("0 - z1*z1", 4)));
  EXPECT_TRUE(series_of("1 - z1 - z2", 4).equals(series_of("1 - (z1 + z2)", 4)));
  EXPECT_TRUE(series_of("z1/2/2", 4).equals(series_of("z1/4", 4)));
  EXPECT_TRUE(series_of("2*3^2", 4).equals(series_of("18", 4)));
}

TEST(Expr, SyntaxErrorCarriesOffset) {
  try {
    expr::parse("z1^^2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
  EXPECT_EQ(kind_of([] { return expr::parse("(z1"); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([] { return expr::parse("z1 $ z2"); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([] { return expr::parse(""); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([] { return expr::parse("z3"); }), ErrorKind::syntax);
}

TEST(Expr, ExponentMustBeScalar) {
  EXPECT_EQ(kind_of([] { return expr::parse("z1^z2"); }), ErrorKind::exponent_not_scalar);
  EXPECT_EQ(kind_of([] { return expr::parse("z1^(z2+1)"); }), ErrorKind::exponent_not_scalar);
}

TEST(Expr, EvalBinomial) {
  EXPECT_EQ(mismatch(series_of("(1+z2)^(1/2)", 3), {{0, 0, "1"}, {0, 1, "1/2"}, {0, 2, "-1/8"}, {0, 3, "1/16"}}, 3),
            "");
}

TEST(Expr, EvalEssentialExample) {
  EXPECT_EQ(mismatch(series_of("exp(z2/(1+z1*z2))", 6), kExpEssential6, 6), "");
}

TEST(Expr, FractionalPowerOfNonUnit) {
  EXPECT_EQ(kind_of([] { return series_of("z1^(3/2)", 6); }), ErrorKind::not_a_unit);
  EXPECT_EQ(kind_of([] { return series_of("z1^(1/2)", 6); }), ErrorKind::not_a_unit);
  EXPECT_EQ(kind_of([] { return series_of("1/z2", 6); }), ErrorKind::division_by_non_unit);
  EXPECT_EQ(kind_of([] { return series_of("log(z1)", 6); }), ErrorKind::not_a_unit);
}

TEST(Expr, LaurentInZ1) {
  Series2 s = series_of("1/z1 + z1^-2", 6);
  EXPECT_EQ(s.coeff(-2, 0).to_string(), "1");
  EXPECT_EQ(s.coeff(-1, 0).to_string(), "1");
}

TEST(Expr, DecimalsAreExactOnExactBackend) {
  EXPECT_TRUE(series_of("0.5*z1", 4).equals(series_of("z1/2", 4)));
  EXPECT_TRUE(series_of("(1+z2)^0.5", 4).equals(series_of("(1+z2)^(1/2)", 4)));
  EXPECT_EQ(series_of("2.5e-1", 2).coeff(0, 0).to_string(), "1/4");
}

TEST(Expr, ImaginaryUnit) {
  EXPECT_EQ(series_of("i*i", 2).coeff(0, 0).to_string(), "-1");
  EXPECT_EQ(series_of("exp(i*z1)", 4).coeff(2, 0).to_string(), "-1/2");
}

TEST(Expr, PrintParseRoundtrip) {
  Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = random_expr(gen, 4);
    expr::Expr e = expr::parse(text);
    std::string printed = expr::print(e);
    ASSERT_TRUE(expr::parse(printed) == e) << text << " printed as " << printed;
    ASSERT_EQ(expr::print(expr::parse(printed)), printed);
  }
}

TEST(Expr, EvalIsHomomorphism) {
  Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::string a = random_expr(gen, 3), b = random_expr(gen, 3);
    Series2 ea = series_of(a, 6), eb = series_of(b, 6);
    ASSERT_TRUE(series_of("(" + a + ")*(" + b + ")", 6).equals(ea * eb)) << a << " | " << b;
    ASSERT_TRUE(series_of("(" + a + ")+(" + b + ")", 6).equals(ea + eb)) << a << " | " << b;
  }
}

TEST(Expr, ExactAndApproxAgree) {
  Gen gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::string a = random_expr(gen, 3);
    Series2 exact = series_of(a, 6);
    Series2 approx = series_of(a, 6, Backend::approx);
    exact.for_each_known([&](int i, int j, const Scalar& c) {
      ASSERT_TRUE(c.to_backend(Backend::approx).equals(approx.coeff(i, j))) << a << " at " << i << "," << j;
    });
  }
}

TEST(Expr, SubstituteAndConstants) {
  expr::Expr e = expr::substitute(expr::parse("z1*z2"), Var::z2, expr::parse("z2 + 1"));
  EXPECT_TRUE(expr::eval(e, 4, kExact).equals(series_of("z1*z2 + z1", 4)));
  EXPECT_TRUE(expr::is_constant(expr::parse("exp(0) + 1/2")));
  EXPECT_FALSE(expr::is_constant(expr::parse("z1")));
  EXPECT_EQ(expr::eval_constant(expr::parse("1/2 + i/3"), kExact).to_string(), "1/2+1/3*i");
  Scalar c = Scalar::exact(mpq_class(-2, 3), mpq_class(1, 5));
  EXPECT_EQ(expr::eval_constant(expr::from_scalar(c), kExact).to_string(), c.to_string());
}
