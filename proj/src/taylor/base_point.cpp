#include "fcl/taylor/base_point.hpp"

#include <algorithm>
#include <string>

#include "fcl/error.hpp"

namespace fcl {

BasePoint::BasePoint(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) {
    throw Error(ErrorCode::InvalidArgument, "base point x has " + std::to_string(x_.size()) +
                                                " coordinates but y has " + std::to_string(y_.size()));
  }
  if (x_.size() < 2) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 2");
  if (std::all_of(y_.begin(), y_.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorCode::InvalidArgument, "y must be nonzero on the slit tangent bundle");
  }
}

double BasePoint::coordinate(int v) const {
  const int n = dim();
  if (v < 0 || v >= 2 * n) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  return v < n ? x_[v] : y_[v - n];
}

BasePoint BasePoint::scaled_y(double factor) const {
  std::vector<double> y = y_;
  for (double& v : y) v *= factor;
  return BasePoint(x_, std::move(y));
}

}  // namespace fcl
