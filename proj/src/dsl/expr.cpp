#include "fcl/dsl/expr.hpp"

#include <algorithm>
#include <cstdio>

namespace fcl {

ExprPtr Expr::literal(double v) { return std::make_shared<const Expr>(Expr{Kind::literal, v, 0, nullptr, nullptr}); }
ExprPtr Expr::x(int i) { return std::make_shared<const Expr>(Expr{Kind::x_var, 0.0, i, nullptr, nullptr}); }
ExprPtr Expr::y(int i) { return std::make_shared<const Expr>(Expr{Kind::y_var, 0.0, i, nullptr, nullptr}); }
ExprPtr Expr::binary(Kind kind, ExprPtr a, ExprPtr b) {
  return std::make_shared<const Expr>(Expr{kind, 0.0, 0, std::move(a), std::move(b)});
}
ExprPtr Expr::negate(ExprPtr a) { return std::make_shared<const Expr>(Expr{Kind::neg, 0.0, 0, std::move(a), nullptr}); }
ExprPtr Expr::power(ExprPtr a, int exponent) {
  return std::make_shared<const Expr>(Expr{Kind::pow, 0.0, exponent, std::move(a), nullptr});
}
ExprPtr Expr::square_root(ExprPtr a) {
  return std::make_shared<const Expr>(Expr{Kind::sqrt, 0.0, 0, std::move(a), nullptr});
}

ExprPtr operator+(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Kind::add, std::move(a), std::move(b)); }
ExprPtr operator-(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Kind::sub, std::move(a), std::move(b)); }
ExprPtr operator*(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Kind::mul, std::move(a), std::move(b)); }
ExprPtr operator/(ExprPtr a, ExprPtr b) { return Expr::binary(Expr::Kind::div, std::move(a), std::move(b)); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::literal: return a.value == b.value;
    case Expr::Kind::x_var:
    case Expr::Kind::y_var: return a.index == b.index;
    case Expr::Kind::neg:
    case Expr::Kind::sqrt: return structurally_equal(*a.lhs, *b.lhs);
    case Expr::Kind::pow: return a.index == b.index && structurally_equal(*a.lhs, *b.lhs);
    default: return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

bool uses_y(const Expr& e) {
  if (e.kind == Expr::Kind::y_var) return true;
  return (e.lhs && uses_y(*e.lhs)) || (e.rhs && uses_y(*e.rhs));
}

int max_variable_index(const Expr& e) {
  int m = (e.kind == Expr::Kind::x_var || e.kind == Expr::Kind::y_var) ? e.index : -1;
  if (e.lhs) m = std::max(m, max_variable_index(*e.lhs));
  if (e.rhs) m = std::max(m, max_variable_index(*e.rhs));
  return m;
}

namespace {

std::string format_literal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // A leading minus directly before a number parses back as a negative literal.
  return v < 0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

std::string binary_source(const Expr& e, const char* op) {
  return "(" + to_source(*e.lhs) + " " + op + " " + to_source(*e.rhs) + ")";
}

}  // namespace

std::string to_source(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::literal: return format_literal(e.value);
    case Expr::Kind::x_var: return "x[" + std::to_string(e.index + 1) + "]";
    case Expr::Kind::y_var: return "y[" + std::to_string(e.index + 1) + "]";
    case Expr::Kind::add: return binary_source(e, "+");
    case Expr::Kind::sub: return binary_source(e, "-");
    case Expr::Kind::mul: return binary_source(e, "*");
    case Expr::Kind::div: return binary_source(e, "/");
    case Expr::Kind::neg: return "(-(" + to_source(*e.lhs) + "))";
    case Expr::Kind::pow: return "(" + to_source(*e.lhs) + ")^" + std::to_string(e.index);
    case Expr::Kind::sqrt: return "sqrt(" + to_source(*e.lhs) + ")";
  }
  return {};
}

}  // namespace fcl
