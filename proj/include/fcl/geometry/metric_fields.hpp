#pragma once

#include "fcl/geometry/local_geometry.hpp"

namespace fcl {

struct FundamentalTensor {
  TensorValue g;      // g_ij
  TensorValue g_inv;  // g^ij
};

struct CartanTorsion {
  TensorValue C;  // C_ijk
  TensorValue I;  // I_k
};

// F, l, y_i, h_ij and h^i_j at one point.
struct PointFrame {
  double F;
  TensorValue ell;        // l^i = y^i / F
  TensorValue y_low;      // y_i
  TensorValue h;          // h_ij
  TensorValue h_mixed;    // h^i_j
};

struct Connections {
  TensorValue N;      // N^i_j
  TensorValue gamma;  // Gamma^i_jk
};

FundamentalTensor fundamental_tensor(const MetricField& metric, const BasePoint& p);
CartanTorsion cartan(const MetricField& metric, const BasePoint& p);
PointFrame angular_frame(const MetricField& metric, const BasePoint& p);
TensorValue spray(const MetricField& metric, const BasePoint& p);
Connections connections(const MetricField& metric, const BasePoint& p);

}  // namespace fcl
