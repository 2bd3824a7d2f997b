#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fcl/taylor/base_point.hpp"
#include "fcl/taylor/monomial_table.hpp"

namespace fcl {

// Shared context of every jet expanded at one base point: the point itself
// and the monomial table for its 2n variables.
struct JetSpace {
  BasePoint base;
  const MonomialTable* table;

  static std::shared_ptr<const JetSpace> make(BasePoint base, int max_order);
};

using JetSpacePtr = std::shared_ptr<const JetSpace>;

// Truncated multivariate Taylor expansion of a scalar field at a base point
// (x, y) in the 2n variables (x^1..x^n, y^1..y^n). Coefficients are stored
// densely in the graded order of MonomialTable; the coefficient of the zero
// multi-index is the field's value at the base point.
//
// Binary operations on jets of different orders truncate to the smaller
// order, so derived fields lose one order per differentiation and the result
// of any pipeline is exact up to roundoff for the order it carries.
class Jet {
 public:
  static Jet constant(JetSpacePtr space, int order, double value);
  static Jet variable(JetSpacePtr space, int order, int var);
  static Jet x(JetSpacePtr space, int order, int i) { return variable(space, order, i); }
  static Jet y(JetSpacePtr space, int order, int i);
  // Jet with explicit coefficients in table order.
  static Jet from_coefficients(JetSpacePtr space, int order, std::vector<double> coeffs);

  int order() const noexcept { return order_; }
  int num_vars() const noexcept { return space_->table->num_vars(); }
  int dim() const noexcept { return num_vars() / 2; }
  const BasePoint& base() const noexcept { return space_->base; }
  const JetSpacePtr& space() const noexcept { return space_; }
  const MonomialTable& table() const noexcept { return *space_->table; }

  double value() const noexcept { return coeffs_[0]; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  // Taylor coefficient of a monomial (not the derivative).
  double coefficient(const MultiIndex& m) const;

  Jet derivative(int var) const;
  Jet dx(int i) const { return derivative(i); }
  Jet dy(int i) const { return derivative(dim() + i); }
  Jet truncated(int order) const;
  // Same space and order, all coefficients zero.
  Jet zero_like() const;
  Jet constant_like(double value) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(double s);
  Jet& operator+=(double s) {
    coeffs_[0] += s;
    return *this;
  }
  // this += a * b, truncated to this jet's order.
  Jet& add_product(const Jet& a, const Jet& b);

  friend Jet operator*(const Jet& a, const Jet& b);

 private:
  Jet(JetSpacePtr space, int order, std::vector<double> coeffs)
      : space_(std::move(space)), order_(order), coeffs_(std::move(coeffs)) {}
  void check_compatible(const Jet& other) const;

  JetSpacePtr space_;
  int order_;
  std::vector<double> coeffs_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(Jet a, double s);
Jet operator-(double s, Jet a);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator/(Jet a, double s);
Jet operator/(const Jet& a, const Jet& b);
Jet operator/(double s, const Jet& b);

Jet reciprocal(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow_int(const Jet& a, int exponent);

enum class JetOp { add, sub, mul, div, sqrt, pow_int, neg };

// Single entry point over the jet algebra; `exponent` is used by pow_int,
// `b` is ignored by the unary operations.
Jet jet_arith(const Jet& a, const Jet& b, JetOp op, int exponent = 0);

// m! * coefficient(m): the mixed partial d^|m| f / dx^alpha dy^beta at the base.
double extract_partial(const Jet& j, const MultiIndex& m);

// sum_i y^i df/dy^i - degree * f at the base point; zero for fields that are
// positively `degree`-homogeneous in y.
double euler_defect(const Jet& j, double degree);

// Threshold below which a constant term counts as zero for division and sqrt.
inline constexpr double kJetDegeneracyThreshold = 1e-12;

}  // namespace fcl
