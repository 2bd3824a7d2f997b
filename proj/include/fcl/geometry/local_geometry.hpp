#pragma once

#include <optional>
#include <string_view>

#include "fcl/dsl/metric.hpp"
#include "fcl/geometry/tensor.hpp"

namespace fcl {

inline constexpr int kDefaultJetOrder = 7;

// Minimum jet order of F^2 needed for each derived field. Every derivative
// (in x or y) consumes one order, so these are exact requirements.
namespace min_order {
inline constexpr int fundamental = 2;
inline constexpr int cartan = 3;
inline constexpr int spray = 2;
inline constexpr int nonlinear_connection = 3;
inline constexpr int berwald_connection = 4;
inline constexpr int berwald = 5;
inline constexpr int landsberg = 4;
inline constexpr int stretch = 5;
inline constexpr int douglas = 6;
inline constexpr int gdw = 7;
inline constexpr int riemann = 4;
inline constexpr int riemann_full = 6;
inline constexpr int mean_berwald_derivatives = 6;
inline constexpr int bianchi = 7;
inline constexpr int full_pipeline = 7;
}  // namespace min_order

// Local Taylor germ of every zeroth-layer field at one base point: F^2 and
// everything derived from it by differentiation and algebra (g, g^-1, C, I,
// h, the spray G and the Berwald connection N, Gamma). Entries are jets, so
// derivatives of any derived field remain available at the base point.
//
// Results are computed on first use and cached; an instance belongs to a
// single thread.
class LocalGeometry {
 public:
  LocalGeometry(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);

  int dim() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  const BasePoint& base() const noexcept { return space_->base; }
  const JetSpacePtr& space() const noexcept { return space_; }
  const MetricField& metric() const noexcept { return metric_; }

  // Throws OrderExceeded when the jet order is below `required`.
  void require(int required, std::string_view what) const;

  const Jet& f2() const noexcept { return f2_; }
  const Jet& F();
  const Jet& inv_f2();
  const Jet& y(int i) { return y_up()(i); }
  Jet constant(double v) const { return Jet::constant(space_, order_, v); }

  const JetTensor& y_up();          // y^i
  const JetTensor& g();             // g_ij = 1/2 [F^2]_{y^i y^j}
  const JetTensor& g_inv();         // g^ij
  const JetTensor& y_low();         // y_i = g_ij y^j
  const JetTensor& cartan();        // C_ijk = 1/4 [F^2]_{y^i y^j y^k}
  const JetTensor& mean_cartan();   // I_k = g^ij C_ijk
  const JetTensor& angular();       // h_ij = g_ij - F^-2 y_i y_j
  const JetTensor& angular_mixed(); // h^i_j = delta^i_j - F^-2 y^i y_j
  const JetTensor& spray();         // G^i
  const JetTensor& nonlinear_connection();  // N^i_j = dG^i/dy^j
  const JetTensor& berwald_connection();    // Gamma^i_jk = d^2 G^i / dy^j dy^k

 private:
  MetricField metric_;
  JetSpacePtr space_;
  int order_;
  int n_;
  Jet f2_;
  std::optional<Jet> F_, inv_f2_;
  std::optional<JetTensor> y_up_, g_, g_inv_, y_low_, cartan_, mean_cartan_, angular_, angular_mixed_, spray_, N_,
      gamma_;
};

// Inverse of a symmetric jet matrix by Gauss-Jordan elimination with partial
// pivoting on the constant terms. Throws SingularMetric when the condition
// number of the constant part exceeds 1e12.
JetTensor invert_jet_matrix(const JetTensor& a);

inline constexpr double kMaxConditionNumber = 1e12;

}  // namespace fcl
