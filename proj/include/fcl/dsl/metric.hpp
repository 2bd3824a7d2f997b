#pragma once

#include <cstdint>
#include <span>

#include "fcl/dsl/parser.hpp"
#include "fcl/taylor/fd_oracle.hpp"
#include "fcl/taylor/jet.hpp"

namespace fcl {

struct CompileOptions {
  // Positive-definiteness is probed on a seeded sample of this ball.
  double validation_radius = 0.85;
  int validation_samples = 16;
  std::uint64_t validation_seed = 0x5eedf1e1dULL;
  bool validate = true;
};

// Compiled metric: an F^2 expression tree plus its domain predicate.
// Immutable; evaluation is pure and safe to share across threads.
class MetricField {
 public:
  MetricField(MetricSpec spec, ExprPtr f2);

  const MetricSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }
  MetricKind kind() const noexcept { return spec_.kind; }
  const Expr& f2_expr() const noexcept { return *f2_; }

  // Domain predicate on the manifold point (|x| < 1 for funk).
  bool admissible(std::span<const double> x) const;

  double f2(std::span<const double> x, std::span<const double> y) const;
  double F(std::span<const double> x, std::span<const double> y) const;
  ScalarField f2_field() const;

  // Jet of F^2 at the space's base point; throws DomainViolation outside the domain.
  Jet f2_jet(const JetSpacePtr& space, int order) const;

 private:
  MetricSpec spec_;
  ExprPtr f2_;
};

// Builds the F^2 tree for the metric kind and probes positive definiteness of
// g on a validation sample (NotPositiveDefinite on failure).
MetricField compile_metric(const MetricSpec& spec, const CompileOptions& options = {});
MetricField compile_metric(std::string_view text, const CompileOptions& options = {});

// Eigenvalues of the fundamental tensor g_ij = 1/2 d^2 F^2 / dy^i dy^j at p.
std::vector<double> fundamental_eigenvalues(const MetricField& metric, const BasePoint& p);

}  // namespace fcl
