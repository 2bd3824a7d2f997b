#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "fcl/error.hpp"
#include "fcl/taylor/jet.hpp"

namespace fcl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree over x[i], y[i], real literals, + - * /,
// integer powers and sqrt. Variable indices are 0-based internally.
struct Expr {
  enum class Kind { literal, x_var, y_var, add, sub, mul, div, neg, pow, sqrt };

  Kind kind;
  double value = 0.0;  // literal
  int index = 0;       // variable index or integer exponent
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr literal(double v);
  static ExprPtr x(int i);
  static ExprPtr y(int i);
  static ExprPtr binary(Kind kind, ExprPtr a, ExprPtr b);
  static ExprPtr negate(ExprPtr a);
  static ExprPtr power(ExprPtr a, int exponent);
  static ExprPtr square_root(ExprPtr a);
};

ExprPtr operator+(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a, ExprPtr b);
ExprPtr operator*(ExprPtr a, ExprPtr b);
ExprPtr operator/(ExprPtr a, ExprPtr b);

bool structurally_equal(const Expr& a, const Expr& b);
bool uses_y(const Expr& e);
// Largest variable index referenced (0-based), or -1.
int max_variable_index(const Expr& e);
// Fully parenthesized source form; reparses to a structurally equal tree.
std::string to_source(const Expr& e);

// Evaluation over any scalar algebra: `Vars` supplies x(i), y(i) and
// constant(v) in the target type.
template <class S, class Vars>
S evaluate(const Expr& e, const Vars& vars) {
  using std::sqrt;
  switch (e.kind) {
    case Expr::Kind::literal: return vars.constant(e.value);
    case Expr::Kind::x_var: return vars.x(e.index);
    case Expr::Kind::y_var: return vars.y(e.index);
    case Expr::Kind::add: return evaluate<S>(*e.lhs, vars) + evaluate<S>(*e.rhs, vars);
    case Expr::Kind::sub: return evaluate<S>(*e.lhs, vars) - evaluate<S>(*e.rhs, vars);
    case Expr::Kind::mul: return evaluate<S>(*e.lhs, vars) * evaluate<S>(*e.rhs, vars);
    case Expr::Kind::div: return evaluate<S>(*e.lhs, vars) / evaluate<S>(*e.rhs, vars);
    case Expr::Kind::neg: return -evaluate<S>(*e.lhs, vars);
    case Expr::Kind::pow: {
      if constexpr (std::is_same_v<S, double>) {
        return std::pow(evaluate<S>(*e.lhs, vars), e.index);
      } else {
        return pow_int(evaluate<S>(*e.lhs, vars), e.index);
      }
    }
    case Expr::Kind::sqrt: return sqrt(evaluate<S>(*e.lhs, vars));
  }
  throw Error(ErrorCode::InvalidArgument, "malformed expression");
}

}  // namespace fcl
