#include "symtwo/expr.hpp"

#include <cctype>
#include <cstdlib>

#include "symtwo/error.hpp"

namespace symtwo::expr {

namespace {

template <typename T>
Expr make(T value) {
  return Expr(std::make_shared<const Node>(Node{std::move(value)}));
}

mpq_class decimal_value(std::string_view text) {
  mpz_class mantissa = 0;
  long scale = 0;
  std::size_t k = 0;
  bool fraction = false;
  for (; k < text.size(); ++k) {
    char ch = text[k];
    if (ch == '.') {
      fraction = true;
      continue;
    }
    if (ch == 'e' || ch == 'E') break;
    mantissa = mantissa * 10 + (ch - '0');
    if (fraction) --scale;
  }
  if (k < text.size()) scale += std::strtol(std::string(text.substr(k + 1)).c_str(), nullptr, 10);
  mpz_class ten_power;
  mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class out = scale < 0 ? mpq_class(mantissa, ten_power) : mpq_class(mantissa * ten_power);
  out.canonicalize();
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "empty expression");
    Expr e = parse_expr();
    skip_space();
    if (pos_ < text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) {
      throw SyntaxError(pos_, std::string("expected '") + ch + "'");
    }
  }

  bool at_number() {
    char ch = peek();
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.';
  }

  Number parse_number() {
    skip_space();
    std::size_t start = pos_;
    bool decimal = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      decimal = true;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        decimal = true;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string text(text_.substr(start, pos_ - start));
    if (text.empty() || text == ".") throw SyntaxError(start, "malformed number");
    return Number{decimal_value(text), text, decimal};
  }

  std::string parse_identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (true) {
      char op = peek();
      if (op != '+' && op != '-') return lhs;
      ++pos_;
      Expr rhs = parse_term();
      lhs = make(Binary{op, lhs.ptr(), rhs.ptr()});
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (true) {
      char op = peek();
      if (op != '*' && op != '/') return lhs;
      ++pos_;
      Expr rhs = parse_unary();
      lhs = make(Binary{op, lhs.ptr(), rhs.ptr()});
    }
  }

  Expr parse_unary() {
    if (accept('-')) return make(Negate{parse_unary().ptr()});
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    Exponent e = parse_exponent();
    if (peek() == '^') throw SyntaxError(pos_, "chained exponent; parenthesize the base");
    return make(Power{base.ptr(), std::move(e)});
  }

  Exponent parse_exponent() {
    std::size_t start = (skip_space(), pos_);
    bool negative = accept('-');
    if (at_number()) {
      Number n = parse_number();
      return Exponent{negative ? mpq_class(-n.value) : n.value, (negative ? "-" : "") + n.text, n.decimal};
    }
    if (!negative && peek() == '(') {
      std::size_t paren = pos_;
      ++pos_;
      bool inner_negative = accept('-');
      if (at_number()) {
        Number num = parse_number();
        mpq_class value = num.value;
        std::string text = (inner_negative ? "-" : "") + num.text;
        bool decimal = num.decimal;
        if (accept('/')) {
          if (!at_number()) return not_scalar(start, paren);
          Number den = parse_number();
          if (sgn(den.value) == 0) throw SyntaxError(pos_, "zero denominator in exponent");
          value /= den.value;
          text += "/" + den.text;
          decimal = decimal || den.decimal;
        }
        if (accept(')')) {
          if (inner_negative) value = -value;
          return Exponent{value, text, decimal};
        }
      }
      return not_scalar(start, paren);
    }
    char ch = peek();
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      parse_primary();
      throw Error(ErrorKind::exponent_not_scalar, "exponent at offset " + std::to_string(start) +
                                                      " must be a numeric literal");
    }
    throw SyntaxError(pos_, "expected exponent literal");
  }

  // The parenthesized exponent is not a literal: check it is at least a
  // well-formed expression so genuine syntax errors keep their position.
  [[noreturn]] Exponent not_scalar(std::size_t start, std::size_t paren) {
    pos_ = paren + 1;
    parse_expr();
    expect(')');
    throw Error(ErrorKind::exponent_not_scalar, "exponent at offset " + std::to_string(start) +
                                                    " must be a numeric literal");
  }

  Expr parse_primary() {
    char ch = peek();
    if (ch == '\0') throw SyntaxError(pos_, "unexpected end of input");
    if (at_number()) return make(parse_number());
    if (accept('(')) {
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      std::string name = parse_identifier();
      if (name == "i") return make(ImaginaryUnit{});
      if (name == "z1") return make(Variable{Var::z1});
      if (name == "z2") return make(Variable{Var::z2});
      Func f;
      if (name == "exp") {
        f = Func::exp;
      } else if (name == "log") {
        f = Func::log;
      } else if (name == "sqrt") {
        f = Func::sqrt;
      } else {
        throw SyntaxError(start, "unknown identifier '" + name + "'");
      }
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      return make(Call{f, arg.ptr()});
    }
    throw SyntaxError(pos_, std::string("unexpected '") + ch + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

enum Level { kSum = 1, kProduct = 2, kNegation = 3, kPower = 4, kAtom = 5 };

struct Printed {
  std::string text;
  int level;
};

Printed print_node(const Node& node);

std::string wrap(const Printed& p, bool parens) { return parens ? "(" + p.text + ")" : p.text; }

std::string exponent_text(const Exponent& e) {
  bool plain = sgn(e.value) >= 0 && e.text.find('/') == std::string::npos && e.text.front() != '-';
  return plain ? e.text : "(" + e.text + ")";
}

Printed print_node(const Node& node) {
  return std::visit(
      [](const auto& n) -> Printed {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return {n.text, kAtom};
        } else if constexpr (std::is_same_v<T, ImaginaryUnit>) {
          return {"i", kAtom};
        } else if constexpr (std::is_same_v<T, Variable>) {
          return {n.var == Var::z1 ? "z1" : "z2", kAtom};
        } else if constexpr (std::is_same_v<T, Negate>) {
          Printed inner = print_node(*n.operand);
          return {"-" + wrap(inner, inner.level < kNegation), kNegation};
        } else if constexpr (std::is_same_v<T, Binary>) {
          int level = (n.op == '+' || n.op == '-') ? kSum : kProduct;
          Printed lhs = print_node(*n.lhs);
          Printed rhs = print_node(*n.rhs);
          return {wrap(lhs, lhs.level < level) + std::string(1, n.op) + wrap(rhs, rhs.level <= level), level};
        } else if constexpr (std::is_same_v<T, Power>) {
          Printed base = print_node(*n.base);
          return {wrap(base, base.level < kAtom) + "^" + exponent_text(n.exponent), kPower};
        } else {
          static constexpr const char* names[] = {"exp", "log", "sqrt"};
          return {std::string(names[static_cast<int>(n.func)]) + "(" + print_node(*n.arg).text + ")", kAtom};
        }
      },
      node.value);
}

bool nodes_equal(const Node& a, const Node& b) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, Number>) {
          return x.value == y.value && x.decimal == y.decimal;
        } else if constexpr (std::is_same_v<T, ImaginaryUnit>) {
          return true;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x.var == y.var;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return nodes_equal(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && nodes_equal(*x.lhs, *y.lhs) && nodes_equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, Power>) {
          return x.exponent.value == y.exponent.value && x.exponent.decimal == y.exponent.decimal &&
                 nodes_equal(*x.base, *y.base);
        } else {
          return x.func == y.func && nodes_equal(*x.arg, *y.arg);
        }
      },
      a.value);
}

Scalar literal_scalar(const mpq_class& value, const std::string& text, bool decimal, Backend backend) {
  if (backend == Backend::exact) return Scalar::exact(value);
  if (decimal && text.find('/') == std::string::npos) return Scalar::approx({std::strtod(text.c_str(), nullptr), 0.0});
  return Scalar::approx({value.get_d(), 0.0});
}

Series2 eval_node(const Node& node, int n, Backend backend) {
  return std::visit(
      [&](const auto& x) -> Series2 {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Number>) {
          return Series2::constant(literal_scalar(x.value, x.text, x.decimal, backend), n);
        } else if constexpr (std::is_same_v<T, ImaginaryUnit>) {
          return Series2::constant(Scalar::imaginary_unit(backend), n);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return Series2::variable(x.var, backend, n);
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval_node(*x.operand, n, backend);
        } else if constexpr (std::is_same_v<T, Binary>) {
          Series2 lhs = eval_node(*x.lhs, n, backend);
          Series2 rhs = eval_node(*x.rhs, n, backend);
          switch (x.op) {
            case '+': return lhs + rhs;
            case '-': return lhs - rhs;
            case '*': return lhs * rhs;
            default: return divide(lhs, rhs);
          }
        } else if constexpr (std::is_same_v<T, Power>) {
          Series2 base = eval_node(*x.base, n, backend);
          const Exponent& e = x.exponent;
          if (e.value.get_den() == 1 && e.value.get_num().fits_slong_p()) {
            return pow(base, e.value.get_num().get_si());
          }
          return pow(base, literal_scalar(e.value, e.text, e.decimal, backend));
        } else {
          Series2 arg = eval_node(*x.arg, n, backend);
          switch (x.func) {
            case Func::exp: return exp(arg);
            case Func::log: return log(arg);
            default: return sqrt(arg);
          }
        }
      },
      node.value);
}

NodePtr substitute_node(const NodePtr& node, Var var, const NodePtr& replacement) {
  return std::visit(
      [&](const auto& x) -> NodePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Variable>) {
          return x.var == var ? replacement : node;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return make(Negate{substitute_node(x.operand, var, replacement)}).ptr();
        } else if constexpr (std::is_same_v<T, Binary>) {
          return make(Binary{x.op, substitute_node(x.lhs, var, replacement), substitute_node(x.rhs, var, replacement)})
              .ptr();
        } else if constexpr (std::is_same_v<T, Power>) {
          return make(Power{substitute_node(x.base, var, replacement), x.exponent}).ptr();
        } else if constexpr (std::is_same_v<T, Call>) {
          return make(Call{x.func, substitute_node(x.arg, var, replacement)}).ptr();
        } else {
          return node;
        }
      },
      node->value);
}

bool node_is_constant(const Node& node) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Variable>) {
          return false;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return node_is_constant(*x.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return node_is_constant(*x.lhs) && node_is_constant(*x.rhs);
        } else if constexpr (std::is_same_v<T, Power>) {
          return node_is_constant(*x.base);
        } else if constexpr (std::is_same_v<T, Call>) {
          return node_is_constant(*x.arg);
        } else {
          return true;
        }
      },
      node.value);
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) { return nodes_equal(a.root(), b.root()); }

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) { return print_node(e.root()).text; }

Series2 eval(const Expr& e, int truncation, Backend backend) {
  if (truncation < 0) throw Error(ErrorKind::invalid_input, "truncation must be non-negative");
  return eval_node(e.root(), truncation, backend);
}

Expr substitute(const Expr& e, Var var, const Expr& replacement) {
  return Expr(substitute_node(e.ptr(), var, replacement.ptr()));
}

bool is_constant(const Expr& e) { return node_is_constant(e.root()); }

Expr from_scalar(const Scalar& c) { return parse(c.to_string()); }

Scalar eval_constant(const Expr& e, Backend backend) {
  if (!is_constant(e)) throw Error(ErrorKind::invalid_input, "expression '" + print(e) + "' is not a constant");
  return eval(e, 0, backend).coeff(0, 0);
}

}  // namespace symtwo::expr
