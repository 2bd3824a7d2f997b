#include "fcl/classify/surface.hpp"

#include <cmath>

namespace fcl {

namespace {

void require_surface(const LocalGeometry& geo) {
  if (geo.dim() != 2) throw Error(ErrorCode::NotASurface, "the Berwald frame needs n = 2, have n = " + std::to_string(geo.dim()));
}

Jet g_pair(const JetTensor& g, const JetTensor& a, const JetTensor& b) {
  Jet acc = g(0, 0) * a(0) * b(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (i || j) acc.add_product(g(i, j) * a(i), b(j));
  return acc;
}

}  // namespace

JetTensor berwald_frame_m(LocalGeometry& geo) {
  require_surface(geo);
  const JetTensor& g = geo.g();
  const Jet invF = reciprocal(geo.F());
  const JetTensor ell = geo.y_up() * invF;
  // Rotating l by +90 degrees gives det(l, v) = |l|^2 > 0; removing the l
  // component keeps the determinant.
  JetTensor v(2, slots("u"), std::vector<Jet>{-ell(1), ell(0)});
  v = v - ell * g_pair(g, v, ell);
  return v * reciprocal(sqrt(g_pair(g, v, v)));
}

Jet main_scalar(LocalGeometry& geo) {
  const JetTensor m = berwald_frame_m(geo);
  const JetTensor& C = geo.cartan();
  Jet c = C(0, 0, 0).zero_like();
  for_each_index(3, 2, [&](const Index& i) { c.add_product(C[i], m(i[0]) * m(i[1]) * m(i[2])); });
  return c * geo.F();
}

SurfaceFrame surface_frame(CurvatureFields& cf) {
  require_surface(cf);
  const double F = cf.F().value();
  const JetTensor m = berwald_frame_m(cf);
  SurfaceFrame f{F, TensorValue(values(cf.y_up()) * (1.0 / F), cf.base()), value_at(m)};
  const Jet I = main_scalar(cf);
  f.I = I.value();
  // I_|s l^s = (y^s dI/dx^s - 2 G^m dI/dy^m) / F
  f.I_1 = flow_derivative(cf, scalar_tensor(I)).data()[0].value() / f.F;
  const Tensor<double> E = values(cf.mean_berwald());
  double e = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) e += E(j, k) * f.m(j) * f.m(k);
  f.I_2 = 2.0 * e;
  return f;
}

SurfaceFrame surface_frame(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return surface_frame(cf);
}

double douglas_2d_criterion(CurvatureFields& cf) {
  const SurfaceFrame f = surface_frame(cf);
  return 3.0 * f.I_1 + f.F * f.I * f.I_2;
}

double douglas_2d_criterion(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return douglas_2d_criterion(cf);
}

SurfaceScalars surface_gib_scalars(const SurfaceFrame& f) {
  if (!(std::abs(f.I) >= kRiemannianDegenerate))
    throw Error(ErrorCode::RiemannianDegenerate, "main scalar vanishes; mu is undetermined");
  return {-2.0 * f.I_1 / f.I, f.I_2 / 3.0};
}

}  // namespace fcl
