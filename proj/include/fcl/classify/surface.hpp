#pragma once

#include "fcl/curvature/curvature_fields.hpp"

namespace fcl {

// Berwald frame (l, m) of a Finsler surface at one point: m is g-unit,
// g-orthogonal to l, and det(l, m) > 0 in coordinates.
struct SurfaceFrame {
  double F = 0.0;
  TensorValue ell;  // l^i
  TensorValue m;    // m^i
  double I = 0.0;   // main scalar, C_ijk = F^-1 I m_i m_j m_k
  double I_1 = 0.0; // I_|s l^s
  double I_2 = 0.0; // 2 E_jk m^j m^k
};

// NotASurface when n != 2.
SurfaceFrame surface_frame(CurvatureFields& fields);
SurfaceFrame surface_frame(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);

// 3 I_,1 + F I I_2; zero exactly for Douglas surfaces.
double douglas_2d_criterion(CurvatureFields& fields);
double douglas_2d_criterion(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);

// mu = -2 I_,1 / I and lambda = I_2 / 3 read off the frame. RiemannianDegenerate
// when I ~ 0.
struct SurfaceScalars {
  double mu;
  double lambda;
};
SurfaceScalars surface_gib_scalars(const SurfaceFrame& frame);

// Jets of m^i and of the main scalar, for callers that differentiate them.
JetTensor berwald_frame_m(LocalGeometry& geo);
Jet main_scalar(LocalGeometry& geo);

}  // namespace fcl
