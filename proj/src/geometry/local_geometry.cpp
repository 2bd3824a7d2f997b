#include "fcl/geometry/local_geometry.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace fcl {

LocalGeometry::LocalGeometry(const MetricField& metric, const BasePoint& p, int order)
    : metric_(metric),
      space_(JetSpace::make(p, order)),
      order_(order),
      n_(p.dim()),
      f2_(metric.f2_jet(space_, order)) {
  if (!(f2_.value() > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "F^2 is not positive at the base point");
}

void LocalGeometry::require(int required, std::string_view what) const {
  if (order_ < required) {
    throw Error(ErrorCode::OrderExceeded, std::string(what) + " needs jet order >= " + std::to_string(required) +
                                              ", have " + std::to_string(order_));
  }
}

const Jet& LocalGeometry::F() {
  if (!F_) F_ = sqrt(f2_);
  return *F_;
}

const Jet& LocalGeometry::inv_f2() {
  if (!inv_f2_) inv_f2_ = reciprocal(f2_);
  return *inv_f2_;
}

const JetTensor& LocalGeometry::y_up() {
  if (!y_up_) y_up_ = JetTensor::generate(n_, slots("u"), [&](const Index& i) { return Jet::y(space_, order_, i[0]); });
  return *y_up_;
}

const JetTensor& LocalGeometry::g() {
  if (!g_) {
    require(min_order::fundamental, "fundamental tensor");
    std::vector<Jet> dy;
    for (int i = 0; i < n_; ++i) dy.push_back(f2_.dy(i));
    g_ = JetTensor::generate(n_, slots("ll"), [&](const Index& i) { return dy[i[0]].dy(i[1]) * 0.5; });
  }
  return *g_;
}

JetTensor invert_jet_matrix(const JetTensor& a) {
  const int n = a.dim();
  Eigen::MatrixXd a0(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a0(i, j) = a(i, j).value();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a0);
  const auto& sv = svd.singularValues();
  const double cond = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : INFINITY;
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream os;
    os << "matrix condition number " << cond << " exceeds " << kMaxConditionNumber;
    throw Error(ErrorCode::SingularMetric, os.str());
  }

  std::vector<std::vector<Jet>> m(n), inv(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[i].push_back(a(i, j));
      inv[i].push_back(a(i, j).constant_like(i == j ? 1.0 : 0.0));
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m[r][col].value()) > std::abs(m[pivot][col].value())) pivot = r;
    std::swap(m[col], m[pivot]);
    std::swap(inv[col], inv[pivot]);
    const Jet r = reciprocal(m[col][col]);
    for (int j = col + 1; j < n; ++j) m[col][j] = m[col][j] * r;
    for (int j = 0; j < n; ++j) inv[col][j] = inv[col][j] * r;
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Jet f = -m[row][col];
      for (int j = col + 1; j < n; ++j) m[row][j].add_product(f, m[col][j]);
      for (int j = 0; j < n; ++j) inv[row][j].add_product(f, inv[col][j]);
    }
  }
  std::vector<Slot> variance;
  for (Slot s : a.variance()) variance.push_back(s == Slot::upper ? Slot::lower : Slot::upper);
  return JetTensor::generate(n, std::move(variance), [&](const Index& i) { return inv[i[0]][i[1]]; });
}

const JetTensor& LocalGeometry::g_inv() {
  if (!g_inv_) g_inv_ = invert_jet_matrix(g());
  return *g_inv_;
}

const JetTensor& LocalGeometry::y_low() {
  if (!y_low_) {
    const JetTensor& gg = g();
    const JetTensor& yy = y_up();
    y_low_ = JetTensor::generate(n_, slots("l"), [&](const Index& i) {
      Jet acc = gg(i[0], 0) * yy(0);
      for (int j = 1; j < n_; ++j) acc.add_product(gg(i[0], j), yy(j));
      return acc;
    });
  }
  return *y_low_;
}

const JetTensor& LocalGeometry::cartan() {
  if (!cartan_) {
    require(min_order::cartan, "Cartan torsion");
    const JetTensor& gg = g();
    cartan_ = JetTensor::generate(n_, slots("lll"), [&](const Index& i) { return gg(i[0], i[1]).dy(i[2]) * 0.5; });
  }
  return *cartan_;
}

const JetTensor& LocalGeometry::mean_cartan() {
  if (!mean_cartan_) {
    const JetTensor& C = cartan();
    const JetTensor& gi = g_inv();
    mean_cartan_ = JetTensor::generate(n_, slots("l"), [&](const Index& k) {
      Jet acc = C(0, 0, k[0]).zero_like();
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) acc.add_product(gi(i, j), C(i, j, k[0]));
      return acc;
    });
  }
  return *mean_cartan_;
}

const JetTensor& LocalGeometry::angular() {
  if (!angular_) {
    const JetTensor& gg = g();
    const JetTensor& yl = y_low();
    const Jet& w = inv_f2();
    angular_ = JetTensor::generate(n_, slots("ll"), [&](const Index& i) {
      return gg(i[0], i[1]) - w * (yl(i[0]) * yl(i[1]));
    });
  }
  return *angular_;
}

const JetTensor& LocalGeometry::angular_mixed() {
  if (!angular_mixed_) {
    const JetTensor& yu = y_up();
    const JetTensor& yl = y_low();
    const Jet& w = inv_f2();
    angular_mixed_ = JetTensor::generate(n_, slots("ul"), [&](const Index& i) {
      return (i[0] == i[1] ? 1.0 : 0.0) - w * (yu(i[0]) * yl(i[1]));
    });
  }
  return *angular_mixed_;
}

const JetTensor& LocalGeometry::spray() {
  if (!spray_) {
    require(min_order::spray, "spray");
    const JetTensor& gi = g_inv();
    const JetTensor& yu = y_up();
    // bracket_l = [F^2]_{x^k y^l} y^k - [F^2]_{x^l}
    std::vector<Jet> bracket;
    for (int l = 0; l < n_; ++l) {
      const Jet fy = f2_.dy(l);
      Jet acc = -f2_.dx(l);
      for (int k = 0; k < n_; ++k) acc.add_product(fy.dx(k), yu(k));
      bracket.push_back(std::move(acc));
    }
    spray_ = JetTensor::generate(n_, slots("u"), [&](const Index& i) {
      Jet acc = gi(i[0], 0) * bracket[0];
      for (int l = 1; l < n_; ++l) acc.add_product(gi(i[0], l), bracket[l]);
      return acc * 0.25;
    });
  }
  return *spray_;
}

const JetTensor& LocalGeometry::nonlinear_connection() {
  if (!N_) {
    require(min_order::nonlinear_connection, "nonlinear connection");
    const JetTensor& G = spray();
    N_ = JetTensor::generate(n_, slots("ul"), [&](const Index& i) { return G(i[0]).dy(i[1]); });
  }
  return *N_;
}

const JetTensor& LocalGeometry::berwald_connection() {
  if (!gamma_) {
    require(min_order::berwald_connection, "Berwald connection");
    const JetTensor& N = nonlinear_connection();
    gamma_ = JetTensor::generate(n_, slots("ull"), [&](const Index& i) { return N(i[0], i[1]).dy(i[2]); });
  }
  return *gamma_;
}

}  // namespace fcl
