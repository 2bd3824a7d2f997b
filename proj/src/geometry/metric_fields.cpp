#include "fcl/geometry/metric_fields.hpp"

namespace fcl {

FundamentalTensor fundamental_tensor(const MetricField& metric, const BasePoint& p) {
  LocalGeometry geo(metric, p, min_order::fundamental);
  return {value_at(geo.g()), value_at(geo.g_inv())};
}

CartanTorsion cartan(const MetricField& metric, const BasePoint& p) {
  LocalGeometry geo(metric, p, min_order::cartan);
  return {value_at(geo.cartan()), value_at(geo.mean_cartan())};
}

PointFrame angular_frame(const MetricField& metric, const BasePoint& p) {
  LocalGeometry geo(metric, p, min_order::fundamental);
  const double F = geo.F().value();
  Tensor<double> ell = values(geo.y_up()) * (1.0 / F);
  return {F, TensorValue(std::move(ell), p), value_at(geo.y_low()), value_at(geo.angular()),
          value_at(geo.angular_mixed())};
}

TensorValue spray(const MetricField& metric, const BasePoint& p) {
  LocalGeometry geo(metric, p, min_order::spray);
  return value_at(geo.spray());
}

Connections connections(const MetricField& metric, const BasePoint& p) {
  LocalGeometry geo(metric, p, min_order::berwald_connection);
  return {value_at(geo.nonlinear_connection()), value_at(geo.berwald_connection())};
}

}  // namespace fcl
