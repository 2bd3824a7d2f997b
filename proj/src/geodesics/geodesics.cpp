#include "fcl/geodesics/geodesics.hpp"

#include <cmath>
#include <sstream>

#include "fcl/classify/classify.hpp"
#include "fcl/curvature/curvature_fields.hpp"
#include "fcl/parallel.hpp"

namespace fcl {

std::vector<double> spray_at(const MetricField& metric, std::span<const double> x, std::span<const double> v) {
  LocalGeometry geo(metric, BasePoint({x.begin(), x.end()}, {v.begin(), v.end()}), min_order::spray);
  const Tensor<double> G = values(geo.spray());
  return G.data();
}

namespace {

bool inside(const MetricField& metric, std::span<const double> x, const GeodesicOptions& options) {
  if (!metric.admissible(x)) return false;
  if (metric.kind() != MetricKind::funk) return true;
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return r2 <= options.funk_cap * options.funk_cap;
}

std::vector<double> axpy(std::span<const double> a, double s, std::span<const double> b) {
  std::vector<double> r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
  return r;
}

}  // namespace

GeodesicPath integrate_geodesic(const MetricField& metric, std::span<const double> x0, std::span<const double> y0,
                                double t_max, int steps, const GeodesicOptions& options) {
  const int n = metric.dim();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(y0.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "initial point and velocity must have the metric's dimension");
  if (steps < 8) throw Error(ErrorCode::InvalidArgument, "geodesic integration needs at least 8 steps");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  if (!inside(metric, x0, options)) throw Error(ErrorCode::DomainViolation, "initial point is outside the domain");
  (void)BasePoint(std::vector<double>(x0.begin(), x0.end()), std::vector<double>(y0.begin(), y0.end()));  // rejects y0 = 0

  GeodesicPath path;
  path.step = t_max / steps;
  const double h = path.step;
  std::vector<double> x(x0.begin(), x0.end()), v(y0.begin(), y0.end());
  path.samples.push_back({0.0, x, v});

  auto accel = [&](const std::vector<double>& xs, const std::vector<double>& vs) {
    std::vector<double> a = spray_at(metric, xs, vs);
    for (double& c : a) c *= -2.0;
    return a;
  };
  for (int s = 0; s < steps; ++s) {
    try {
      const std::vector<double> k1x = v, k1v = accel(x, v);
      const std::vector<double> x2 = axpy(x, h / 2, k1x), v2 = axpy(v, h / 2, k1v);
      if (!inside(metric, x2, options)) throw Error(ErrorCode::LeftDomain, "stage point left the domain");
      const std::vector<double> k2x = v2, k2v = accel(x2, v2);
      const std::vector<double> x3 = axpy(x, h / 2, k2x), v3 = axpy(v, h / 2, k2v);
      if (!inside(metric, x3, options)) throw Error(ErrorCode::LeftDomain, "stage point left the domain");
      const std::vector<double> k3x = v3, k3v = accel(x3, v3);
      const std::vector<double> x4 = axpy(x, h, k3x), v4 = axpy(v, h, k3v);
      if (!inside(metric, x4, options)) throw Error(ErrorCode::LeftDomain, "stage point left the domain");
      const std::vector<double> k4x = v4, k4v = accel(x4, v4);
      std::vector<double> xn(n), vn(n);
      for (int i = 0; i < n; ++i) {
        xn[i] = x[i] + h / 6 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]);
        vn[i] = v[i] + h / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]);
      }
      if (!inside(metric, xn, options)) throw Error(ErrorCode::LeftDomain, "path left the domain");
      x = std::move(xn);
      v = std::move(vn);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LeftDomain && e.code() != ErrorCode::DomainViolation) throw;
      std::ostringstream os;
      os << "LeftDomain: truncated at t = " << s * h;
      if (metric.kind() == MetricKind::funk) os << " (|x| cap " << options.funk_cap << ")";
      path.left_domain = true;
      path.truncation = os.str();
      break;
    }
    path.samples.push_back({(s + 1) * h, x, v});
  }
  return path;
}

std::vector<double> st5_defects(double h, std::span<const double> mu, std::span<const double> F) {
  if (mu.size() != F.size()) throw Error(ErrorCode::InvalidArgument, "mu and F sample counts differ");
  std::vector<double> out;
  for (std::size_t i = 2; i + 2 < mu.size(); ++i) {
    const double dmu = (mu[i - 2] - 8.0 * mu[i - 1] + 8.0 * mu[i + 1] - mu[i + 2]) / (12.0 * h);
    out.push_back(2.0 * dmu - mu[i] * mu[i] * F[i]);
  }
  return out;
}

GeodesicDiagnostics along_geodesic_diagnostics(const MetricField& metric, const GeodesicPath& path,
                                               const DiagnosticsOptions& options) {
  GeodesicDiagnostics d;
  const int count = static_cast<int>(path.samples.size());
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "empty geodesic path");
  std::vector<double> F(count);
  for (int s = 0; s < count; ++s) {
    const GeodesicSample& g = path.samples[s];
    F[s] = metric.F(g.x, g.v);
    d.t.push_back(g.t);
  }
  d.F0 = F[0];
  for (double f : F) d.f_defect = std::max(d.f_defect, std::abs(f - d.F0));

  std::vector<GibFit> fits(count);
  parallel_for(count, options.threads, [&](int s) {
    const GeodesicSample& g = path.samples[s];
    CurvatureFields cf(metric, BasePoint(g.x, g.v), options.order);
    fits[s] = fit_gib(cf);
  });
  for (int s = 0; s < count; ++s) {
    d.riemannian_degenerate = d.riemannian_degenerate || fits[s].riemannian_degenerate;
    d.max_gib_residual = std::max(d.max_gib_residual, fits[s].residual);
    if (!(fits[s].residual <= options.tol)) {
      std::ostringstream os;
      os << "GIB fit residual " << fits[s].residual << " exceeds " << options.tol << " at t = " << path.samples[s].t;
      throw Error(ErrorCode::FitFailed, os.str());
    }
  }

  const int stride = options.stretch_stride > 0 ? options.stretch_stride : std::max(1, (count - 1) / 16);
  for (int s = 0; s < count; s += stride) d.stretch_index.push_back(s);
  d.stretch_norm.resize(d.stretch_index.size());
  parallel_for(static_cast<int>(d.stretch_index.size()), options.threads, [&](int k) {
    const GeodesicSample& g = path.samples[d.stretch_index[k]];
    CurvatureFields cf(metric, BasePoint(g.x, g.v), options.stretch_order);
    d.stretch_norm[k] = scaled_norm(values(cf.stretch()));
  });
  for (double s : d.stretch_norm) d.max_stretch = std::max(d.max_stretch, s);
  d.st5_expected_zero = d.max_stretch <= options.tol;

  if (d.riemannian_degenerate) {
    d.note = "RiemannianDegenerate: mu is undetermined along the path; mu and St5 diagnostics skipped";
    return d;
  }
  for (const GibFit& f : fits) d.mu.push_back(f.mu);
  d.st5 = st5_defects(path.step, d.mu, F);
  for (double e : d.st5) d.max_st5 = std::max(d.max_st5, std::abs(e));
  if (d.st5.empty()) d.note = "path too short for five-point differences";
  return d;
}

}  // namespace fcl
