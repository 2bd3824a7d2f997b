#pragma once

#include <span>

#include "fcl/curvature/curvature_fields.hpp"

namespace fcl {

struct BerwaldCurvature {
  TensorValue B;  // B^i_jkl
  TensorValue E;  // E_jk
};

struct LandsbergCurvature {
  TensorValue L;  // L_ijk
  TensorValue J;  // J_k
};

struct RiemannCurvature {
  TensorValue Rk;  // R^i_k
  TensorValue R;   // R^i_jkl
};

struct MeanBerwaldDerivatives {
  TensorValue H;     // H_jk = E_jk|m y^m
  TensorValue Ebar;  // E_ij|k
};

struct FlagFit {
  double K;
  double residual;  // scaled residual of R^i_k against K F^2 h^i_k
};

// All curvature values at one point.
struct CurvaturePack {
  TensorValue C, I, B, E, L, J, sigma, D, gdw, Rk, R, H, Ebar;
  FlagFit flag;
};

BerwaldCurvature berwald(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
LandsbergCurvature landsberg(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
TensorValue stretch(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
TensorValue douglas(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
TensorValue gdw_tensor(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
RiemannCurvature riemann(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
MeanBerwaldDerivatives h_and_ebar(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);
CurvaturePack curvature_pack(CurvatureFields& fields);

// g(u, R u) / (g(y,y) g(u,u) - g(y,u)^2); DegenerateFlag when the denominator
// is below 1e-12.
double flag_curvature(CurvatureFields& fields, std::span<const double> u);
double flag_curvature(const MetricField& metric, const BasePoint& p, std::span<const double> u,
                      int order = kDefaultJetOrder);

// Fit of R^i_k = K F^2 h^i_k. The fit is the projection onto h in the trace
// inner product, K = R^m_m / ((n-1) F^2), which uses R^i_k y^k = 0.
FlagFit scalar_flag_fit(CurvatureFields& fields);
FlagFit scalar_flag_fit(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);

inline constexpr double kDefaultFlagTolerance = 1e-6;

// (n+1)/3 K_{,k} + (K + mu^2/4 - mu'/(2F)) I_k with K_{,k} from the fitted K
// jet field. NotScalarFlag when the flag fit residual exceeds `tol`.
std::vector<double> kkc_residual(CurvatureFields& fields, double mu, double mu_prime,
                                 double tol = kDefaultFlagTolerance);
std::vector<double> kkc_residual(const MetricField& metric, const BasePoint& p, double mu, double mu_prime,
                                 double tol = kDefaultFlagTolerance, int order = kDefaultJetOrder);

}  // namespace fcl
