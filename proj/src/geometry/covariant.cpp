#include "fcl/geometry/covariant.hpp"

namespace fcl {

namespace {

std::vector<Slot> with_lower(std::vector<Slot> v) {
  v.push_back(Slot::lower);
  return v;
}

// Entry of T at `idx` with slot a replaced by m.
const Jet& at_replaced(const JetTensor& T, Index idx, int a, int m) {
  idx[a] = m;
  return T[idx];
}

// Adds the per-slot connection terms conn^a_m T^..m.. (upper) and
// -conn^m_b T_..m.. (lower) to acc. conn(a, m) returns the coefficient jet.
template <class Conn>
void add_slot_corrections(Jet& acc, const JetTensor& T, const Index& idx, Conn&& conn, int n) {
  for (int a = 0; a < T.rank(); ++a) {
    for (int m = 0; m < n; ++m) {
      if (T.variance()[a] == Slot::upper) {
        acc.add_product(conn(idx[a], m), at_replaced(T, idx, a, m));
      } else {
        acc.add_product(-conn(m, idx[a]), at_replaced(T, idx, a, m));
      }
    }
  }
}

}  // namespace

JetTensor v_derivative(const JetTensor& T) {
  const int r = T.rank();
  return JetTensor::generate(T.dim(), with_lower(T.variance()), [&](const Index& i) { return T[i].dy(i[r]); });
}

JetTensor h_derivative(LocalGeometry& geo, const JetTensor& T) {
  const int n = geo.dim();
  const int r = T.rank();
  if (r + 1 > kMaxRank) throw Error(ErrorCode::InvalidArgument, "tensor rank too large for a derivative");
  const JetTensor& N = geo.nonlinear_connection();
  const JetTensor& gamma = geo.berwald_connection();
  std::vector<std::vector<Jet>> dy(T.size());
  for (std::size_t e = 0; e < T.size(); ++e)
    for (int m = 0; m < n; ++m) dy[e].push_back(T.data()[e].dy(m));

  return JetTensor::generate(n, with_lower(T.variance()), [&](const Index& i) {
    const int l = i[r];
    Index base = i;
    base[r] = 0;
    const std::size_t e = T.flat(base);
    Jet acc = T.data()[e].dx(l);
    for (int m = 0; m < n; ++m) acc.add_product(-N(m, l), dy[e][m]);
    add_slot_corrections(acc, T, base, [&](int a, int m) -> const Jet& { return gamma(a, m, l); }, n);
    return acc;
  });
}

JetTensor contract(const JetTensor& T, int slot, const JetTensor& v) {
  const int n = T.dim();
  std::vector<Slot> variance = T.variance();
  variance.erase(variance.begin() + slot);
  const int r = T.rank();
  return JetTensor::generate(n, std::move(variance), [&](const Index& i) {
    Index full{};
    for (int s = 0, k = 0; s < r; ++s) full[s] = s == slot ? 0 : i[k++];
    Jet acc = T[full] * v(0);
    for (int m = 1; m < n; ++m) {
      full[slot] = m;
      acc.add_product(T[full], v(m));
    }
    return acc;
  });
}

JetTensor contract_y(LocalGeometry& geo, const JetTensor& T, int slot) { return contract(T, slot, geo.y_up()); }

JetTensor geodesic_contraction(LocalGeometry& geo, const JetTensor& T) {
  return contract_y(geo, h_derivative(geo, T), T.rank());
}

JetTensor flow_derivative(LocalGeometry& geo, const JetTensor& T) {
  const int n = geo.dim();
  const JetTensor& G = geo.spray();
  const JetTensor& N = geo.nonlinear_connection();
  const JetTensor& y = geo.y_up();
  return JetTensor::generate(n, T.variance(), [&](const Index& i) {
    const Jet& t = T[i];
    Jet acc = t.dx(0) * y(0);
    for (int s = 1; s < n; ++s) acc.add_product(t.dx(s), y(s));
    for (int m = 0; m < n; ++m) acc.add_product(G(m) * -2.0, t.dy(m));
    add_slot_corrections(acc, T, i, [&](int a, int m) -> const Jet& { return N(a, m); }, n);
    return acc;
  });
}

TensorValue v_derivative(const MetricField& metric, const TensorField& T, const BasePoint& p, int order) {
  LocalGeometry geo(metric, p, order);
  geo.require(T.min_order + 1, "vertical derivative");
  return value_at(v_derivative(T.build(geo)));
}

TensorValue h_derivative(const MetricField& metric, const TensorField& T, const BasePoint& p, int order) {
  LocalGeometry geo(metric, p, order);
  geo.require(std::max(T.min_order + 1, min_order::berwald_connection), "horizontal derivative");
  return value_at(h_derivative(geo, T.build(geo)));
}

TensorValue geodesic_contraction(const MetricField& metric, const TensorField& T, const BasePoint& p, int order) {
  LocalGeometry geo(metric, p, order);
  geo.require(std::max(T.min_order + 1, min_order::berwald_connection), "horizontal derivative");
  return value_at(geodesic_contraction(geo, T.build(geo)));
}

}  // namespace fcl
