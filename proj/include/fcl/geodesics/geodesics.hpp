#pragma once

#include <span>
#include <string>
#include <vector>

#include "fcl/dsl/metric.hpp"
#include "fcl/geometry/local_geometry.hpp"

namespace fcl {

struct GeodesicSample {
  double t;
  std::vector<double> x;
  std::vector<double> v;  // dx/dt
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double step = 0.0;
  int method_order = 4;
  bool left_domain = false;  // truncated before t_max
  std::string truncation;    // why, when truncated
};

struct GeodesicOptions {
  // Funk paths stop where |x| would exceed this radius.
  double funk_cap = 0.95;
};

// G^i(x, v) from an order-2 jet of F^2.
std::vector<double> spray_at(const MetricField& metric, std::span<const double> x, std::span<const double> v);

// Classical RK4 on x' = v, v' = -2 G(x, v) with `steps` equal steps on
// [0, t_max]. Requires steps >= 8 and an admissible start. When the path
// would leave the domain it is truncated at the last admissible sample and
// flagged (LeftDomain).
GeodesicPath integrate_geodesic(const MetricField& metric, std::span<const double> x0, std::span<const double> y0,
                                double t_max, int steps, const GeodesicOptions& options = {});

// 2 dmu/dt - mu^2 F at the interior samples 2..N-3 (five-point central
// differences on a uniform grid of spacing h).
std::vector<double> st5_defects(double h, std::span<const double> mu, std::span<const double> F);

struct DiagnosticsOptions {
  double tol = 1e-6;
  int order = 5;         // jets for the mu fit
  int stretch_order = kDefaultJetOrder;
  int stretch_stride = 0;  // 0: about 16 points along the path
  int threads = 0;
};

struct GeodesicDiagnostics {
  double F0 = 0.0;
  double f_defect = 0.0;           // max |F(x(t), x'(t)) - F0|
  std::vector<double> t;           // sample times
  std::vector<double> mu;          // fitted mu at each sample (empty when degenerate)
  std::vector<double> st5;         // at samples 2..N-3
  double max_st5 = 0.0;
  double max_gib_residual = 0.0;
  std::vector<int> stretch_index;  // samples where the stretch norm was taken
  std::vector<double> stretch_norm;
  double max_stretch = 0.0;
  // The St5 defect only has to vanish where the stretch curvature does.
  bool st5_expected_zero = false;
  bool riemannian_degenerate = false;
  std::string note;
};

// FitFailed when the GIB fit residual exceeds tol somewhere on the path.
GeodesicDiagnostics along_geodesic_diagnostics(const MetricField& metric, const GeodesicPath& path,
                                               const DiagnosticsOptions& options = {});

}  // namespace fcl
