#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcl/curvature/curvature_fields.hpp"

namespace fcl {

enum class Suite { universal, gib, all };

std::string_view to_string(Suite s);
Suite parse_suite(std::string_view text);  // InvalidArgument on unknown names

enum class Verdict { pass, fail, skipped };
std::string_view to_string(Verdict v);

struct IdentityReport {
  std::string id;
  std::string statement;  // the identity in index notation
  int samples = 0;
  // Max scaled residual over the samples; empty when skipped or when a sample failed.
  std::optional<double> max_residual;
  double tolerance = 0.0;
  Verdict verdict = Verdict::skipped;
  std::string reason;     // why skipped or failed
  int worst_sample = -1;
};

struct VerifyOptions {
  Suite suite = Suite::universal;
  double tol = 1e-6;
  // Conditional identities apply only when the GIB (or scalar flag) fit
  // residual is at most this at every sample.
  double fit_tol = 1e-6;
  int order = kDefaultJetOrder;
  int threads = 0;  // 0: hardware concurrency
};

struct IdentityInfo {
  std::string id;
  std::string statement;
  enum class Condition { none, gib, scalar_flag, gib_and_scalar_flag } condition;
  int min_dim;
};

// Identities of a suite, in report order.
std::vector<IdentityInfo> identity_catalog(Suite suite);

// Residual of every identity of the suite at one point, in catalog order
// (empty optional when the point's computation failed), plus the fit residuals
// that decide applicability.
struct PointIdentities {
  std::vector<std::optional<double>> residuals;
  std::vector<std::string> errors;
  double gib_residual = 0.0;
  double flag_residual = 0.0;
  std::string fit_error;
};

PointIdentities identities_at(CurvatureFields& fields, const std::vector<IdentityInfo>& catalog);

// Evaluates every identity of the suite at each sample and reduces by max.
// Samples are processed in parallel; the merge runs in sample order.
std::vector<IdentityReport> verify_identities(const MetricField& metric, std::span<const BasePoint> samples,
                                              const VerifyOptions& options = {});

}  // namespace fcl
