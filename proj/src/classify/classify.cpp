#include "fcl/classify/classify.hpp"

#include <algorithm>
#include <cmath>

#include "fcl/curvature/curvature.hpp"
#include "fcl/parallel.hpp"

namespace fcl {

GibFit fit_gib(CurvatureFields& cf) {
  GibFit fit;
  fit.riemannian_degenerate = cf.riemannian_degenerate();
  fit.lambda = cf.lambda_field().value();
  if (!fit.riemannian_degenerate) {
    fit.mu = cf.mu_field().value();
    fit.mu_prime = flow_derivative(cf, scalar_tensor(cf.mu_field())).data()[0].value();
  }
  fit.residual = scaled_residual(values(cf.berwald()), values(cf.gib_model()));
  return fit;
}

GibFit fit_gib(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return fit_gib(cf);
}

RelIsotropicFit rel_isotropic_fit(CurvatureFields& cf) {
  const double eta = cf.eta_field().value();
  return {eta, scaled_residual(values(cf.landsberg()), values(cf.cartan()) * eta)};
}

RelIsotropicFit rel_isotropic_fit(const MetricField& metric, const BasePoint& p, int order) {
  CurvatureFields cf(metric, p, order);
  return rel_isotropic_fit(cf);
}

const PredicateResult& ClassificationRecord::at(std::string_view name) const {
  for (const PredicateResult& p : predicates)
    if (p.name == name) return p;
  throw Error(ErrorCode::InvalidArgument, "unknown predicate '" + std::string(name) + "'");
}

const std::vector<std::string>& predicate_names() {
  static const std::vector<std::string> names = {
      "riemannian", "berwald",           "weakly_berwald",          "landsberg",   "stretch",
      "douglas",    "gdw",               "r_quadratic",             "gib",         "isotropic_berwald",
      "rel_isotropic_landsberg", "scalar_flag", "h_zero", "ebar_zero"};
  return names;
}

namespace {

double scalar_residual(double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

struct Implication {
  const char* from;
  const char* to;
};

constexpr Implication kImplications[] = {
    {"riemannian", "berwald"},   {"berwald", "weakly_berwald"}, {"berwald", "landsberg"},
    {"berwald", "douglas"},      {"landsberg", "stretch"},      {"douglas", "gdw"},
    {"gib", "gdw"},              {"r_quadratic", "stretch"},    {"r_quadratic", "h_zero"},
    {"isotropic_berwald", "gib"},
};

}  // namespace

PointPredicates predicates_at(CurvatureFields& cf) {
  const auto& names = predicate_names();
  PointPredicates out{std::vector<double>(names.size(), NAN), std::vector<std::string>(names.size())};
  auto set = [&](const char* name, auto&& compute) {
    const auto idx = std::find(names.begin(), names.end(), name) - names.begin();
    try {
      out.residuals[idx] = compute(out.notes[idx]);
    } catch (const Error& e) {
      out.notes[idx] = e.what();
    }
  };
  auto norm = [](const JetTensor& t) { return scaled_norm(values(t)); };
  set("riemannian", [&](std::string&) { return norm(cf.cartan()); });
  set("berwald", [&](std::string&) { return norm(cf.berwald()); });
  set("weakly_berwald", [&](std::string&) { return norm(cf.mean_berwald()); });
  set("landsberg", [&](std::string&) { return norm(cf.landsberg()); });
  set("stretch", [&](std::string&) { return norm(cf.stretch()); });
  set("douglas", [&](std::string&) { return norm(cf.douglas()); });
  set("gdw", [&](std::string&) { return norm(cf.gdw()); });
  set("r_quadratic", [&](std::string&) { return norm(v_derivative(cf.riemann())); });
  set("gib", [&](std::string& note) {
    const GibFit fit = fit_gib(cf);
    if (fit.riemannian_degenerate) note = "Riemannian-degenerate: mu undetermined, lambda-only form";
    return fit.residual;
  });
  set("isotropic_berwald", [&](std::string& note) {
    // mu = 2c(x), lambda = c(x)/F: F lambda must be y-free and mu = 2 F lambda.
    const GibFit fit = fit_gib(cf);
    const Jet Flambda = cf.F() * cf.lambda_field();
    double r = fit.residual;
    for (int k = 0; k < cf.dim(); ++k) r = std::max(r, scalar_residual(Flambda.dy(k).value(), 0.0));
    if (fit.riemannian_degenerate) {
      note = "Riemannian-degenerate: mu taken as 2 F lambda";
    } else {
      r = std::max(r, scalar_residual(fit.mu, 2.0 * Flambda.value()));
    }
    return r;
  });
  set("rel_isotropic_landsberg", [&](std::string& note) {
    if (cf.riemannian_degenerate()) {
      note = "Riemannian-degenerate: L = C = 0, eta undetermined";
      return scaled_norm(values(cf.landsberg()));
    }
    return rel_isotropic_fit(cf).residual;
  });
  set("scalar_flag", [&](std::string&) { return scalar_flag_fit(cf).residual; });
  set("h_zero", [&](std::string&) { return norm(cf.mean_berwald_flow()); });
  set("ebar_zero", [&](std::string&) { return norm(cf.mean_berwald_h()); });
  return out;
}

ClassificationRecord predicates(const MetricField& metric, std::span<const BasePoint> samples,
                                const ClassifyOptions& options) {
  const auto& names = predicate_names();
  const int count = static_cast<int>(samples.size());
  std::vector<PointPredicates> points(count);
  parallel_for(count, options.threads, [&](int s) {
    try {
      CurvatureFields cf(metric, samples[s], options.order);
      points[s] = predicates_at(cf);
    } catch (const Error& e) {
      points[s] = {std::vector<double>(names.size(), NAN), std::vector<std::string>(names.size(), e.what())};
    }
  });

  ClassificationRecord record;
  record.seed = options.seed;
  record.samples = count;
  record.tolerance = options.tol;
  for (std::size_t k = 0; k < names.size(); ++k) {
    PredicateResult r;
    r.name = names[k];
    auto it = options.tol_overrides.find(names[k]);
    r.tolerance = it != options.tol_overrides.end() ? it->second : options.tol;
    double worst = 0.0;
    bool failed = false;
    for (int s = 0; s < count; ++s) {
      const double v = points[s].residuals[k];
      if (std::isnan(v)) {
        failed = true;
        r.note = "sample " + std::to_string(s) + ": " + points[s].notes[k];
        break;
      }
      worst = std::max(worst, v);
      if (r.note.empty()) r.note = points[s].notes[k];
    }
    if (count == 0) r.note = "no samples";
    if (!failed) r.residual = worst;
    r.verdict = !failed && count > 0 && worst <= r.tolerance;
    record.predicates.push_back(std::move(r));
  }
  for (const Implication& imp : kImplications) {
    const std::string text = std::string(imp.from) + " => " + imp.to;
    record.implications.push_back(text);
    if (record.at(imp.from).verdict && !record.at(imp.to).verdict) record.violations.push_back(text);
  }
  return record;
}

}  // namespace fcl
