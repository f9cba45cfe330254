#pragma once

// Expression language for entering differentials.
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' exponent)?
//   exponent := number | '-' number | '(' ['-'] number ['/' number] ')'
//   primary  := number | 'i' | 'z1' | 'z2' | ('exp' | 'log' | 'sqrt') '(' expr ')' | '(' expr ')'
//   number   := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//
// Exponents are literals: a run fixes a numeric exponent. Decimal literals
// are read exactly on the exact backend (0.5 == 1/2).

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "symtwo/series2.hpp"

namespace symtwo::expr {

enum class Func { exp, log, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// An unsigned numeric literal; `text` is the spelling used by the printer.
struct Number {
  mpq_class value;
  std::string text;
  bool decimal = false;
};

/// Exponent literal, possibly signed or rational.
struct Exponent {
  mpq_class value;
  std::string text;
  bool decimal = false;
};

struct ImaginaryUnit {};
struct Variable {
  Var var;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  char op;  // one of + - * /
  NodePtr lhs;
  NodePtr rhs;
};
struct Power {
  NodePtr base;
  Exponent exponent;
};
struct Call {
  Func func;
  NodePtr arg;
};

struct Node {
  std::variant<Number, ImaginaryUnit, Variable, Negate, Binary, Power, Call> value;
};

/// Immutable expression tree.
class Expr {
 public:
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& ptr() const { return root_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

Expr parse(std::string_view text);
/// Canonical serializer; parse(print(e)) == e.
std::string print(const Expr& e);

Series2 eval(const Expr& e, int truncation, Backend backend);

/// Replace every occurrence of `var` by `replacement`.
Expr substitute(const Expr& e, Var var, const Expr& replacement);
bool is_constant(const Expr& e);
/// A literal expression for a scalar (via its canonical text).
Expr from_scalar(const Scalar& c);
/// Evaluate a variable-free expression to a scalar.
Scalar eval_constant(const Expr& e, Backend backend);

}  // namespace symtwo::expr
