#pragma once

#include <span>
#include <vector>

namespace fcl {

// A point (x, y) of the slit tangent bundle: x is the manifold point, y a
// nonzero tangent vector at x. Dimension n >= 2.
class BasePoint {
 public:
  BasePoint(std::vector<double> x, std::vector<double> y);

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }

  // Coordinate value of variable v in the ordering (x^1..x^n, y^1..y^n).
  double coordinate(int v) const;

  BasePoint with_y(std::vector<double> y) const { return BasePoint(x_, std::move(y)); }
  BasePoint scaled_y(double factor) const;

  friend bool operator==(const BasePoint&, const BasePoint&) = default;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace fcl
