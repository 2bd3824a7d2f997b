#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcl/curvature/curvature_fields.hpp"

namespace fcl {

struct GibFit {
  double mu = 0.0;        // 0-homogeneous
  double lambda = 0.0;    // (-1)-homogeneous
  double residual = 0.0;  // scaled defect of B against the fitted decomposition
  double mu_prime = 0.0;  // mu_|s y^s
  // C ~ 0: mu is undetermined, reported as 0, and the residual is against the
  // lambda-only form.
  bool riemannian_degenerate = false;
};

// mu from the projection of L onto C, lambda from the trace of E.
GibFit fit_gib(CurvatureFields& fields);
GibFit fit_gib(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);

struct RelIsotropicFit {
  double eta = 0.0;       // <L,C>/<C,C>, degree 1
  double residual = 0.0;  // scaled defect of L - eta C
};

// Throws RiemannianDegenerate when C ~ 0.
RelIsotropicFit rel_isotropic_fit(CurvatureFields& fields);
RelIsotropicFit rel_isotropic_fit(const MetricField& metric, const BasePoint& p, int order = kDefaultJetOrder);

struct PredicateResult {
  std::string name;
  std::optional<double> residual;  // max over samples; empty when a sample failed
  double tolerance = 0.0;
  bool verdict = false;
  std::string note;
};

struct ClassificationRecord {
  std::vector<PredicateResult> predicates;
  // Implications between verdicts that the taxonomy guarantees, and which of
  // them the computed verdicts violate.
  std::vector<std::string> implications;
  std::vector<std::string> violations;
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0.0;

  const PredicateResult& at(std::string_view name) const;
};

struct ClassifyOptions {
  double tol = 1e-6;
  std::map<std::string, double, std::less<>> tol_overrides;
  int order = kDefaultJetOrder;
  int threads = 0;
  std::uint64_t seed = 0;  // echoed into the record
};

// Predicate names in record order.
const std::vector<std::string>& predicate_names();

// Scaled residual of every predicate at one point (NaN when not computable),
// with a note for degenerate cases, in predicate_names() order.
struct PointPredicates {
  std::vector<double> residuals;
  std::vector<std::string> notes;
};
PointPredicates predicates_at(CurvatureFields& fields);

ClassificationRecord predicates(const MetricField& metric, std::span<const BasePoint> samples,
                                const ClassifyOptions& options = {});

}  // namespace fcl
