#pragma once

#include "fcl/geometry/covariant.hpp"
#include "fcl/geometry/local_geometry.hpp"

namespace fcl {

// Every curvature field as a jet tensor at one base point, computed lazily on
// top of the zeroth layer. Same threading rules as LocalGeometry.
class CurvatureFields : public LocalGeometry {
 public:
  using LocalGeometry::LocalGeometry;

  const JetTensor& berwald();             // B^i_jkl = d^3 G^i / dy^j dy^k dy^l
  const JetTensor& mean_berwald();        // E_jk = 1/2 B^m_jkm
  const JetTensor& landsberg();           // L_ijk = C_ijk|s y^s
  const JetTensor& landsberg_from_berwald();  // -1/2 y_i B^i_jkl
  const JetTensor& mean_landsberg();      // J_k = g^ij L_ijk
  const JetTensor& landsberg_h();         // L_ijk|l
  const JetTensor& stretch();             // Sigma_ijkl = 2(L_ijk|l - L_ijl|k)
  const JetTensor& mean_berwald_v();      // E_jk,l
  const JetTensor& douglas();             // D^i_jkl
  const JetTensor& douglas_flow();        // D^i_jkl|m y^m
  const JetTensor& gdw();                 // h^i_a D^a_jkl|m y^m
  const JetTensor& riemann_k();           // R^i_k
  const JetTensor& riemann();             // R^i_jkl = 1/3 d/dy^j (dR^i_k/dy^l - dR^i_l/dy^k)
  const JetTensor& mean_berwald_h();      // E-bar_ijk = E_ij|k
  const JetTensor& mean_berwald_flow();   // H_jk = E_jk|m y^m

  // Fitted scalars as jet fields, so their derivatives are available.
  // <A, B> is the full contraction with every slot raised by g^-1.
  const Jet& cartan_norm2();    // <C, C>
  const Jet& landsberg_cartan();  // <L, C>
  bool riemannian_degenerate();   // sqrt<C,C> F < 1e-10
  const Jet& mu_field();        // -2 F^-1 <L,C>/<C,C>; RiemannianDegenerate when C ~ 0
  const Jet& lambda_field();    // 2 g^jk E_jk / ((n+1)(n-1))
  const Jet& eta_field();       // <L,C>/<C,C>
  const Jet& flag_field();      // R^m_m / ((n-1) F^2)

  // mu C_jkl l^i + lambda (h^i_j h_kl + h^i_k h_jl + h^i_l h_jk) with the
  // fitted scalars (mu = 0 when Riemannian-degenerate).
  JetTensor gib_model();
  // K F^2 h^i_k with the fitted K.
  JetTensor scalar_flag_model();

 private:
  std::optional<JetTensor> B_, E_, L_, L_from_B_, J_, L_h_, sigma_, E_v_, D_, D_flow_, gdw_, Rk_, R_, E_h_, H_;
  std::optional<Jet> cc_, lc_, mu_, lambda_, eta_, K_;
};

// Every slot of an all-lower tensor raised with g^-1.
JetTensor raise_all(LocalGeometry& geo, const JetTensor& T);
// Full contraction of two same-shape tensors entry by entry.
Jet full_contraction(const JetTensor& a, const JetTensor& b);
// g_ia T^a_...: lowers the first slot.
JetTensor lower_first(LocalGeometry& geo, const JetTensor& T);

inline constexpr double kRiemannianDegenerate = 1e-10;

}  // namespace fcl
