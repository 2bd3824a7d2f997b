#include "fcl/curvature/curvature_fields.hpp"

#include <cmath>

namespace fcl {

JetTensor raise_all(LocalGeometry& geo, const JetTensor& T) {
  const JetTensor& gi = geo.g_inv();
  const int n = geo.dim();
  JetTensor cur = T;
  for (int s = 0; s < T.rank(); ++s) {
    if (cur.variance()[s] == Slot::upper) continue;
    std::vector<Slot> variance = cur.variance();
    variance[s] = Slot::upper;
    cur = JetTensor::generate(n, std::move(variance), [&](const Index& i) {
      Index k = i;
      k[s] = 0;
      Jet acc = gi(i[s], 0) * cur[k];
      for (int m = 1; m < n; ++m) {
        k[s] = m;
        acc.add_product(gi(i[s], m), cur[k]);
      }
      return acc;
    });
  }
  return cur;
}

Jet full_contraction(const JetTensor& a, const JetTensor& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "tensor shape mismatch");
  Jet acc = a.data()[0] * b.data()[0];
  for (std::size_t e = 1; e < a.size(); ++e) acc.add_product(a.data()[e], b.data()[e]);
  return acc;
}

JetTensor lower_first(LocalGeometry& geo, const JetTensor& T) {
  const JetTensor& g = geo.g();
  const int n = geo.dim();
  std::vector<Slot> variance = T.variance();
  variance[0] = Slot::lower;
  return JetTensor::generate(n, std::move(variance), [&](const Index& i) {
    Index k = i;
    k[0] = 0;
    Jet acc = g(i[0], 0) * T[k];
    for (int a = 1; a < n; ++a) {
      k[0] = a;
      acc.add_product(g(i[0], a), T[k]);
    }
    return acc;
  });
}

const JetTensor& CurvatureFields::berwald() {
  if (!B_) {
    require(min_order::berwald, "Berwald curvature");
    const JetTensor& gamma = berwald_connection();
    B_ = JetTensor::generate(dim(), slots("ulll"), [&](const Index& i) { return gamma(i[0], i[1], i[2]).dy(i[3]); });
  }
  return *B_;
}

const JetTensor& CurvatureFields::mean_berwald() {
  if (!E_) {
    const JetTensor& B = berwald();
    E_ = JetTensor::generate(dim(), slots("ll"), [&](const Index& i) {
      Jet acc = B(0, i[0], i[1], 0);
      for (int m = 1; m < dim(); ++m) acc += B(m, i[0], i[1], m);
      return acc * 0.5;
    });
  }
  return *E_;
}

const JetTensor& CurvatureFields::landsberg() {
  if (!L_) {
    require(min_order::landsberg, "Landsberg curvature");
    L_ = geodesic_contraction(*this, cartan());
  }
  return *L_;
}

const JetTensor& CurvatureFields::landsberg_from_berwald() {
  if (!L_from_B_) {
    const JetTensor& B = berwald();
    const JetTensor& yl = y_low();
    L_from_B_ = JetTensor::generate(dim(), slots("lll"), [&](const Index& i) {
      Jet acc = yl(0) * B(0, i[0], i[1], i[2]);
      for (int a = 1; a < dim(); ++a) acc.add_product(yl(a), B(a, i[0], i[1], i[2]));
      return acc * -0.5;
    });
  }
  return *L_from_B_;
}

const JetTensor& CurvatureFields::mean_landsberg() {
  if (!J_) {
    const JetTensor& L = landsberg();
    const JetTensor& gi = g_inv();
    J_ = JetTensor::generate(dim(), slots("l"), [&](const Index& k) {
      Jet acc = gi(0, 0) * L(0, 0, k[0]);
      for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
          if (i || j) acc.add_product(gi(i, j), L(i, j, k[0]));
      return acc;
    });
  }
  return *J_;
}

const JetTensor& CurvatureFields::landsberg_h() {
  if (!L_h_) {
    require(min_order::stretch, "horizontal derivative of the Landsberg curvature");
    L_h_ = h_derivative(*this, landsberg());
  }
  return *L_h_;
}

const JetTensor& CurvatureFields::stretch() {
  if (!sigma_) {
    const JetTensor& Lh = landsberg_h();
    sigma_ = JetTensor::generate(dim(), slots("llll"), [&](const Index& i) {
      return (Lh(i[0], i[1], i[2], i[3]) - Lh(i[0], i[1], i[3], i[2])) * 2.0;
    });
  }
  return *sigma_;
}

const JetTensor& CurvatureFields::mean_berwald_v() {
  if (!E_v_) {
    require(min_order::douglas, "vertical derivative of the mean Berwald curvature");
    E_v_ = v_derivative(mean_berwald());
  }
  return *E_v_;
}

const JetTensor& CurvatureFields::douglas() {
  if (!D_) {
    const JetTensor& B = berwald();
    const JetTensor& E = mean_berwald();
    const JetTensor& Ev = mean_berwald_v();
    const JetTensor& y = y_up();
    const double c = 2.0 / (dim() + 1);
    D_ = JetTensor::generate(dim(), slots("ulll"), [&](const Index& idx) {
      const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
      Jet acc = B[idx];
      if (i == l) acc -= E(j, k) * c;
      if (i == j) acc -= E(k, l) * c;
      if (i == k) acc -= E(l, j) * c;
      acc.add_product(Ev(j, k, l) * -c, y(i));
      return acc;
    });
  }
  return *D_;
}

const JetTensor& CurvatureFields::douglas_flow() {
  if (!D_flow_) {
    require(min_order::gdw, "horizontal derivative of the Douglas curvature");
    D_flow_ = geodesic_contraction(*this, douglas());
  }
  return *D_flow_;
}

const JetTensor& CurvatureFields::gdw() {
  if (!gdw_) {
    const JetTensor& Df = douglas_flow();
    const JetTensor& h = angular_mixed();
    gdw_ = JetTensor::generate(dim(), slots("ulll"), [&](const Index& idx) {
      Jet acc = h(idx[0], 0) * Df(0, idx[1], idx[2], idx[3]);
      for (int a = 1; a < dim(); ++a) acc.add_product(h(idx[0], a), Df(a, idx[1], idx[2], idx[3]));
      return acc;
    });
  }
  return *gdw_;
}

const JetTensor& CurvatureFields::riemann_k() {
  if (!Rk_) {
    require(min_order::riemann, "Riemann curvature");
    const int n = dim();
    const JetTensor& G = spray();
    const JetTensor& N = nonlinear_connection();
    const JetTensor& y = y_up();
    Rk_ = JetTensor::generate(n, slots("ul"), [&](const Index& idx) {
      const int i = idx[0], k = idx[1];
      Jet acc = G(i).dx(k) * 2.0;
      for (int j = 0; j < n; ++j) {
        acc.add_product(-y(j), N(i, k).dx(j));
        acc.add_product(G(j) * 2.0, N(i, k).dy(j));
        acc.add_product(-N(i, j), N(j, k));
      }
      return acc;
    });
  }
  return *Rk_;
}

const JetTensor& CurvatureFields::riemann() {
  if (!R_) {
    require(min_order::riemann_full, "full Riemann curvature");
    const JetTensor& Rk = riemann_k();
    const int n = dim();
    // A^i_kl = dR^i_k/dy^l - dR^i_l/dy^k
    const JetTensor A = JetTensor::generate(n, slots("ull"), [&](const Index& i) {
      return Rk(i[0], i[1]).dy(i[2]) - Rk(i[0], i[2]).dy(i[1]);
    });
    R_ = JetTensor::generate(n, slots("ulll"), [&](const Index& i) {
      return A(i[0], i[2], i[3]).dy(i[1]) * (1.0 / 3.0);
    });
  }
  return *R_;
}

const JetTensor& CurvatureFields::mean_berwald_h() {
  if (!E_h_) {
    require(min_order::mean_berwald_derivatives, "horizontal derivative of the mean Berwald curvature");
    E_h_ = h_derivative(*this, mean_berwald());
  }
  return *E_h_;
}

const JetTensor& CurvatureFields::mean_berwald_flow() {
  if (!H_) H_ = contract_y(*this, mean_berwald_h(), 2);
  return *H_;
}

const Jet& CurvatureFields::cartan_norm2() {
  if (!cc_) cc_ = full_contraction(raise_all(*this, cartan()), cartan());
  return *cc_;
}

const Jet& CurvatureFields::landsberg_cartan() {
  if (!lc_) lc_ = full_contraction(raise_all(*this, cartan()), landsberg());
  return *lc_;
}

bool CurvatureFields::riemannian_degenerate() {
  return !(std::sqrt(std::max(cartan_norm2().value(), 0.0)) * F().value() >= kRiemannianDegenerate);
}

const Jet& CurvatureFields::mu_field() {
  if (!mu_) {
    if (riemannian_degenerate())
      throw Error(ErrorCode::RiemannianDegenerate, "Cartan torsion vanishes; mu is undetermined");
    mu_ = landsberg_cartan() * reciprocal(cartan_norm2() * F()) * -2.0;
  }
  return *mu_;
}

const Jet& CurvatureFields::lambda_field() {
  if (!lambda_) {
    const int n = dim();
    const JetTensor& E = mean_berwald();
    const JetTensor& gi = g_inv();
    Jet tr = full_contraction(gi, E);
    lambda_ = tr * (2.0 / ((n + 1) * (n - 1)));
  }
  return *lambda_;
}

const Jet& CurvatureFields::eta_field() {
  if (!eta_) {
    if (riemannian_degenerate())
      throw Error(ErrorCode::RiemannianDegenerate, "Cartan torsion vanishes; eta is undetermined");
    eta_ = landsberg_cartan() / cartan_norm2();
  }
  return *eta_;
}

const Jet& CurvatureFields::flag_field() {
  if (!K_) {
    const JetTensor& Rk = riemann_k();
    Jet tr = Rk(0, 0);
    for (int m = 1; m < dim(); ++m) tr += Rk(m, m);
    K_ = tr * inv_f2() * (1.0 / (dim() - 1));
  }
  return *K_;
}

JetTensor CurvatureFields::gib_model() {
  const JetTensor& C = cartan();
  const JetTensor& h = angular();
  const JetTensor& hm = angular_mixed();
  const JetTensor& y = y_up();
  const Jet& lambda = lambda_field();
  std::optional<Jet> mu_over_F;
  if (!riemannian_degenerate()) mu_over_F = mu_field() * reciprocal(F());
  return JetTensor::generate(dim(), slots("ulll"), [&](const Index& idx) {
    const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
    Jet sym = hm(i, j) * h(k, l);
    sym.add_product(hm(i, k), h(j, l));
    sym.add_product(hm(i, l), h(j, k));
    Jet acc = lambda * sym;
    if (mu_over_F) acc.add_product(*mu_over_F * C(j, k, l), y(i));
    return acc;
  });
}

JetTensor CurvatureFields::scalar_flag_model() {
  const Jet KF2 = flag_field() * f2();
  const JetTensor& hm = angular_mixed();
  return JetTensor::generate(dim(), slots("ul"), [&](const Index& i) { return hm(i[0], i[1]) * KF2; });
}

}  // namespace fcl
