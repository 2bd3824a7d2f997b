#include "fcl/curvature/curvature.hpp"

#include <cmath>
#include <sstream>

namespace fcl {

BerwaldCurvature berwald(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return {value_at(cf.berwald()), value_at(cf.mean_berwald())};
}

LandsbergCurvature landsberg(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return {value_at(cf.landsberg()), value_at(cf.mean_landsberg())};
}

TensorValue stretch(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return value_at(cf.stretch());
}

TensorValue douglas(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return value_at(cf.douglas());
}

TensorValue gdw_tensor(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return value_at(cf.gdw());
}

RiemannCurvature riemann(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return {value_at(cf.riemann_k()), value_at(cf.riemann())};
}

MeanBerwaldDerivatives h_and_ebar(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return {value_at(cf.mean_berwald_flow()), value_at(cf.mean_berwald_h())};
}

CurvaturePack curvature_pack(CurvatureFields& cf) {
  return {value_at(cf.cartan()),       value_at(cf.mean_cartan()),     value_at(cf.berwald()),
          value_at(cf.mean_berwald()), value_at(cf.landsberg()),       value_at(cf.mean_landsberg()),
          value_at(cf.stretch()),      value_at(cf.douglas()),         value_at(cf.gdw()),
          value_at(cf.riemann_k()),    value_at(cf.riemann()),         value_at(cf.mean_berwald_flow()),
          value_at(cf.mean_berwald_h()), scalar_flag_fit(cf)};
}

double flag_curvature(CurvatureFields& cf, std::span<const double> u) {
  const int n = cf.dim();
  if (static_cast<int>(u.size()) != n) throw Error(ErrorCode::DimensionMismatch, "flag vector has wrong dimension");
  const Tensor<double> g = values(cf.g());
  const Tensor<double> Rk = values(cf.riemann_k());
  const auto y = cf.base().y();
  auto inner = [&](auto&& a, auto&& b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += g(i, j) * a(i) * b(j);
    return s;
  };
  auto uu = [&](int i) { return u[i]; };
  auto yy = [&](int i) { return y[i]; };
  auto Ru = [&](int i) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += Rk(i, k) * u[k];
    return s;
  };
  const double guu = inner(uu, uu), gyy = inner(yy, yy), gyu = inner(yy, uu);
  const double denom = gyy * guu - gyu * gyu;
  if (!(denom >= 1e-12)) {
    std::ostringstream os;
    os << "flag denominator " << denom << " is below 1e-12 (u parallel to y)";
    throw Error(ErrorCode::DegenerateFlag, os.str());
  }
  return inner(uu, Ru) / denom;
}

double flag_curvature(const MetricField& metric, const BasePoint& p, std::span<const double> u, int order) {
  CurvatureFields cf(metric, p, order);
  return flag_curvature(cf, u);
}

FlagFit scalar_flag_fit(CurvatureFields& cf) {
  const double K = cf.flag_field().value();
  return {K, scaled_residual(values(cf.riemann_k()), values(cf.scalar_flag_model()))};
}

FlagFit scalar_flag_fit(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return scalar_flag_fit(cf);
}

std::vector<double> kkc_residual(CurvatureFields& cf, double mu, double mu_prime, double tol) {
  const FlagFit fit = scalar_flag_fit(cf);
  if (!(fit.residual <= tol)) {
    std::ostringstream os;
    os << "flag fit residual " << fit.residual << " exceeds " << tol;
    throw Error(ErrorCode::NotScalarFlag, os.str());
  }
  const int n = cf.dim();
  const double F = cf.F().value();
  const Jet& K = cf.flag_field();
  const Tensor<double> I = values(cf.mean_cartan());
  const double c = fit.K + mu * mu / 4.0 - mu_prime / (2.0 * F);
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k) r[k] = (n + 1) / 3.0 * K.dy(k).value() + c * I(k);
  return r;
}

std::vector<double> kkc_residual(const MetricField& metric, const BasePoint& p, double mu, double mu_prime,
                                 double tol, int order) {
  CurvatureFields cf(metric, p, order);
  return kkc_residual(cf, mu, mu_prime, tol);
}

}  // namespace fcl
