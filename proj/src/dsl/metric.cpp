#include "fcl/dsl/metric.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

namespace fcl {

namespace {

struct DoubleVars {
  std::span<const double> xs;
  std::span<const double> ys;
  double x(int i) const { return xs[i]; }
  double y(int i) const { return ys[i]; }
  double constant(double v) const { return v; }
};

struct JetVars {
  const JetSpacePtr& space;
  int order;
  Jet x(int i) const { return Jet::x(space, order, i); }
  Jet y(int i) const { return Jet::y(space, order, i); }
  Jet constant(double v) const { return Jet::constant(space, order, v); }
};

ExprPtr sum(std::vector<ExprPtr> terms) {
  ExprPtr acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
  return acc;
}

ExprPtr quadratic_form(const std::vector<std::vector<ExprPtr>>& a, int n) {
  std::vector<ExprPtr> terms;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) terms.push_back(a[i][j] * Expr::y(i) * Expr::y(j));
  return sum(std::move(terms));
}

ExprPtr dot(int n, ExprPtr (*u)(int), ExprPtr (*v)(int)) {
  std::vector<ExprPtr> terms;
  for (int i = 0; i < n; ++i) terms.push_back(u(i) * v(i));
  return sum(std::move(terms));
}

ExprPtr build_f2(const MetricSpec& spec) {
  const int n = spec.dim;
  switch (spec.kind) {
    case MetricKind::euclidean: return dot(n, Expr::y, Expr::y);
    case MetricKind::riemannian: return quadratic_form(spec.matrix, n);
    case MetricKind::randers: {
      std::vector<ExprPtr> beta;
      for (int i = 0; i < n; ++i) beta.push_back(spec.covector[i] * Expr::y(i));
      return Expr::power(Expr::square_root(quadratic_form(spec.matrix, n)) + sum(std::move(beta)), 2);
    }
    case MetricKind::funk: {
      // F = (sqrt(|y|^2 - (|x|^2 |y|^2 - <x,y>^2)) + <x,y>) / (1 - |x|^2)
      const ExprPtr yy = dot(n, Expr::y, Expr::y);
      const ExprPtr xx = dot(n, Expr::x, Expr::x);
      const ExprPtr xy = dot(n, Expr::x, Expr::y);
      const ExprPtr root = Expr::square_root(yy - (xx * yy - Expr::power(xy, 2)));
      return Expr::power((root + xy) / (Expr::literal(1.0) - xx), 2);
    }
    case MetricKind::custom: return spec.f2;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown metric kind");
}

void validate_spec(const MetricSpec& spec) {
  if (spec.dim < 2) throw Error(ErrorCode::DimensionMismatch, "dimension must be at least 2");
  auto check_x_only = [&](const ExprPtr& e) {
    if (!e) throw Error(ErrorCode::InvalidArgument, "missing expression");
    if (uses_y(*e)) throw Error(ErrorCode::InvalidArgument, "matrix and covector entries must depend on x only");
    if (max_variable_index(*e) >= spec.dim) throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  };
  const std::size_t n = static_cast<std::size_t>(spec.dim);
  if (spec.kind == MetricKind::riemannian || spec.kind == MetricKind::randers) {
    if (spec.matrix.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix must be n x n");
    for (const auto& row : spec.matrix) {
      if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix must be n x n");
      for (const auto& e : row) check_x_only(e);
    }
  }
  if (spec.kind == MetricKind::randers) {
    if (spec.covector.size() != n) throw Error(ErrorCode::DimensionMismatch, "covector must have n entries");
    for (const auto& e : spec.covector) check_x_only(e);
  }
  if (spec.kind == MetricKind::custom) {
    if (!spec.f2) throw Error(ErrorCode::InvalidArgument, "custom metric needs an F^2 expression");
    if (max_variable_index(*spec.f2) >= spec.dim) throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  }
}

std::string point_string(const BasePoint& p) {
  std::ostringstream os;
  os.precision(6);
  os << "x=(";
  for (int i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p.x()[i];
  os << ") y=(";
  for (int i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p.y()[i];
  os << ")";
  return os.str();
}

}  // namespace

MetricField::MetricField(MetricSpec spec, ExprPtr f2) : spec_(std::move(spec)), f2_(std::move(f2)) {}

bool MetricField::admissible(std::span<const double> x) const {
  if (spec_.kind != MetricKind::funk) return true;
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return r2 < 1.0;
}

double MetricField::f2(std::span<const double> x, std::span<const double> y) const {
  return evaluate<double>(*f2_, DoubleVars{x, y});
}

double MetricField::F(std::span<const double> x, std::span<const double> y) const { return std::sqrt(f2(x, y)); }

ScalarField MetricField::f2_field() const {
  return [self = *this](std::span<const double> x, std::span<const double> y) { return self.f2(x, y); };
}

Jet MetricField::f2_jet(const JetSpacePtr& space, int order) const {
  if (space->base.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "base point dimension differs from metric");
  if (!admissible(space->base.x()))
    throw Error(ErrorCode::DomainViolation, "point outside the metric domain: " + point_string(space->base));
  return evaluate<Jet>(*f2_, JetVars{space, order});
}

std::vector<double> fundamental_eigenvalues(const MetricField& metric, const BasePoint& p) {
  const int n = p.dim();
  const Jet f2 = metric.f2_jet(JetSpace::make(p, 2), 2);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      MultiIndex m = MultiIndex::dy(n, i);
      m.beta[j] += 1;
      g(i, j) = 0.5 * extract_partial(f2, m);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

MetricField compile_metric(const MetricSpec& spec, const CompileOptions& options) {
  validate_spec(spec);
  MetricField field(spec, build_f2(spec));
  if (!options.validate) return field;

  const int n = spec.dim;
  std::mt19937_64 rng(options.validation_seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int s = 0; s < options.validation_samples; ++s) {
    std::vector<double> x(n), y(n);
    double r2 = 0.0;
    do {
      r2 = 0.0;
      for (double& v : x) {
        v = unit(rng) * options.validation_radius;
        r2 += v * v;
      }
    } while (r2 > options.validation_radius * options.validation_radius);
    double y2 = 0.0;
    do {
      y2 = 0.0;
      for (double& v : y) {
        v = unit(rng);
        y2 += v * v;
      }
    } while (y2 < 1e-6);
    const BasePoint p(x, y);
    if (!field.admissible(p.x())) continue;
    std::vector<double> ev;
    try {
      if (!(field.f2(p.x(), p.y()) > 0.0))
        throw Error(ErrorCode::NotPositiveDefinite, "F^2 is not positive at " + point_string(p));
      ev = fundamental_eigenvalues(field, p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotPositiveDefinite) throw;
      throw Error(ErrorCode::NotPositiveDefinite, std::string("metric evaluation failed at ") + point_string(p) +
                                                      ": " + e.what());
    }
    if (!(ev.front() > 0.0)) {
      std::ostringstream os;
      os << "fundamental tensor has eigenvalue " << ev.front() << " at " << point_string(p);
      throw Error(ErrorCode::NotPositiveDefinite, os.str());
    }
  }
  return field;
}

MetricField compile_metric(std::string_view text, const CompileOptions& options) {
  return compile_metric(parse_metric(text), options);
}

}  // namespace fcl
