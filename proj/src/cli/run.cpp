#include "fcl/cli/run.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fcl/classify/classify.hpp"
#include "fcl/cli/report.hpp"
#include "fcl/curvature/curvature.hpp"
#include "fcl/geodesics/geodesics.hpp"
#include "fcl/parallel.hpp"

namespace fcl {

using nlohmann::json;

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::report: return "report";
    case Subcommand::classify: return "classify";
    case Subcommand::verify: return "verify";
    case Subcommand::geodesic: return "geodesic";
  }
  return "?";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownIdentifier:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DomainViolation:
      return kExitUsage;
    default:
      return kExitNumerical;
  }
}

namespace {

constexpr int kMaxJetOrder = 12;

MetricField load_metric(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read metric file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return compile_metric(text.str());
}

json config_echo(const RunConfig& c) {
  json j{{"metric", c.metric_path}, {"order", c.order}};
  switch (c.subcommand) {
    case Subcommand::report:
      j["samples"] = c.samples;
      j["seed"] = c.seed;
      j["domain"] = c.domain.to_string();
      break;
    case Subcommand::classify:
      j["samples"] = c.samples;
      j["seed"] = c.seed;
      j["domain"] = c.domain.to_string();
      j["tol"] = c.tol;
      j["tol_overrides"] = c.tol_overrides;
      break;
    case Subcommand::verify:
      j["samples"] = c.samples;
      j["seed"] = c.seed;
      j["domain"] = c.domain.to_string();
      j["tol"] = c.tol;
      j["suite"] = std::string(to_string(c.suite));
      break;
    case Subcommand::geodesic:
      j["x0"] = c.x0;
      j["y0"] = c.y0;
      j["tmax"] = c.tmax;
      j["steps"] = c.steps;
      j["tol"] = c.tol;
      break;
  }
  return j;
}

json sample_report(const MetricField& metric, const BasePoint& p, int order) {
  json s;
  s["point"] = point_json(p);
  CurvatureFields cf(metric, p, order);
  json tensors = json::array();
  auto add = [&](const char* symbol, const char* name, const JetTensor& t) {
    tensors.push_back(tensor_block(symbol, name, values(t)));
  };
  add("g", "fundamental tensor", cf.g());
  add("g^-1", "inverse fundamental tensor", cf.g_inv());
  add("h", "angular metric", cf.angular());
  add("C", "Cartan torsion", cf.cartan());
  add("I", "mean Cartan torsion", cf.mean_cartan());
  add("G", "spray coefficients", cf.spray());
  add("N", "nonlinear connection", cf.nonlinear_connection());
  add("Gamma", "Berwald connection", cf.berwald_connection());
  add("B", "Berwald curvature", cf.berwald());
  add("E", "mean Berwald curvature", cf.mean_berwald());
  add("L", "Landsberg curvature", cf.landsberg());
  add("J", "mean Landsberg curvature", cf.mean_landsberg());
  add("Sigma", "stretch curvature", cf.stretch());
  add("D", "Douglas curvature", cf.douglas());
  add("GDW", "projected geodesic derivative of the Douglas curvature", cf.gdw());
  add("R^i_k", "Riemann curvature", cf.riemann_k());
  add("R^i_jkl", "full Riemann curvature", cf.riemann());
  add("H", "geodesic derivative of the mean Berwald curvature", cf.mean_berwald_flow());
  add("Ebar", "horizontal derivative of the mean Berwald curvature", cf.mean_berwald_h());
  s["tensors"] = std::move(tensors);

  json sc = json::object();
  put_number(sc, "F", cf.F().value());
  const GibFit gib = fit_gib(cf);
  if (gib.riemannian_degenerate) {
    sc["mu"] = nullptr;
    sc["mu_reason"] = "Cartan torsion vanishes (Riemannian-degenerate)";
  } else {
    put_number(sc, "mu", gib.mu);
  }
  put_number(sc, "lambda", gib.lambda);
  put_number(sc, "gib_residual", gib.residual);
  try {
    const RelIsotropicFit eta = rel_isotropic_fit(cf);
    put_number(sc, "eta", eta.eta);
    put_number(sc, "eta_residual", eta.residual);
  } catch (const Error& e) {
    sc["eta"] = nullptr;
    sc["eta_reason"] = e.what();
    sc["eta_residual"] = nullptr;
    sc["eta_residual_reason"] = e.what();
  }
  const FlagFit flag = scalar_flag_fit(cf);
  put_number(sc, "K", flag.K);
  put_number(sc, "K_residual", flag.residual);
  s["scalars"] = std::move(sc);
  return s;
}

int run_report(const MetricField& metric, const std::vector<BasePoint>& points, const RunConfig& c, json& r) {
  const int count = static_cast<int>(points.size());
  std::vector<json> out(count);
  parallel_for(count, c.threads, [&](int i) {
    try {
      out[i] = sample_report(metric, points[i], c.order);
    } catch (const Error& e) {
      out[i] = json{{"point", point_json(points[i])}, {"errors", json::array({error_json(e)})}};
    }
  });
  int code = kExitOk;
  json samples = json::array();
  for (int i = 0; i < count; ++i) {
    out[i]["index"] = i;
    if (out[i].contains("errors")) {
      code = kExitNumerical;
      for (const json& e : out[i]["errors"]) {
        json copy = e;
        copy["sample"] = i;
        r["errors"].push_back(std::move(copy));
      }
    }
    samples.push_back(std::move(out[i]));
  }
  r["samples"] = std::move(samples);
  if (count == 0) r["note"] = "no samples";
  return code;
}

int run_classify(const MetricField& metric, const std::vector<BasePoint>& points, const RunConfig& c, json& r) {
  ClassifyOptions opt;
  opt.tol = c.tol;
  opt.tol_overrides = c.tol_overrides;
  opt.order = c.order;
  opt.threads = c.threads;
  opt.seed = c.seed;
  const ClassificationRecord rec = predicates(metric, points, opt);
  r["classification"] = classification_json(rec);
  if (points.empty()) r["note"] = "no samples";
  return rec.violations.empty() ? kExitOk : kExitFailedChecks;
}

int run_verify(const MetricField& metric, const std::vector<BasePoint>& points, const RunConfig& c, json& r) {
  VerifyOptions opt;
  opt.suite = c.suite;
  opt.tol = c.tol;
  opt.order = c.order;
  opt.threads = c.threads;
  const std::vector<IdentityReport> reports = verify_identities(metric, points, opt);
  json ids = json::array();
  bool failed = false;
  for (const IdentityReport& rep : reports) {
    ids.push_back(identity_json(rep));
    failed = failed || rep.verdict == Verdict::fail;
  }
  r["identities"] = std::move(ids);
  if (points.empty()) r["note"] = "no samples";
  return failed ? kExitFailedChecks : kExitOk;
}

int run_geodesic(const MetricField& metric, const RunConfig& c, json& r) {
  const auto n = static_cast<std::size_t>(metric.dim());
  if (c.x0.size() != n || c.y0.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "--x0 and --y0 need " + std::to_string(n) + " components");
  if (!(c.tmax > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tmax must be positive");
  const GeodesicPath path = integrate_geodesic(metric, c.x0, c.y0, c.tmax, c.steps);
  json g;
  g["path"] = path_json(path);
  DiagnosticsOptions opt;
  opt.tol = c.tol;
  opt.stretch_order = c.order;
  opt.threads = c.threads;
  int code = kExitOk;
  try {
    const GeodesicDiagnostics d = along_geodesic_diagnostics(metric, path, opt);
    g["diagnostics"] = diagnostics_json(d);
    json checks;
    checks["f_constancy"] = d.f_defect <= c.tol;
    if (d.st5_expected_zero && !d.riemannian_degenerate) checks["st5_defect"] = d.max_st5 <= c.tol;
    for (const auto& [name, ok] : checks.items())
      if (!ok.get<bool>()) code = kExitFailedChecks;
    g["checks"] = std::move(checks);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FitFailed) throw;
    r["errors"].push_back(error_json(e));
    code = kExitFailedChecks;
  }
  r["geodesic"] = std::move(g);
  return code;
}

}  // namespace

RunResult run(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  json& r = result.report;
  r["schema"] = kReportSchema;
  r["subcommand"] = std::string(to_string(c.subcommand));
  r["config"] = config_echo(c);
  r["errors"] = json::array();
  try {
    if (c.order < min_order::full_pipeline || c.order > kMaxJetOrder)
      throw Error(ErrorCode::InvalidArgument, "jet order must be between " + std::to_string(min_order::full_pipeline) +
                                                  " and " + std::to_string(kMaxJetOrder));
    const MetricField metric = load_metric(c.metric_path);
    r["metric"] = {{"kind", std::string(to_string(metric.kind()))}, {"dim", metric.dim()}};
    if (c.subcommand == Subcommand::geodesic) {
      result.exit_code = run_geodesic(metric, c, r);
    } else {
      const std::vector<BasePoint> points = sample_points(metric, {c.samples, c.seed, c.domain});
      switch (c.subcommand) {
        case Subcommand::report: result.exit_code = run_report(metric, points, c, r); break;
        case Subcommand::classify: result.exit_code = run_classify(metric, points, c, r); break;
        case Subcommand::verify: result.exit_code = run_verify(metric, points, c, r); break;
        case Subcommand::geodesic: break;
      }
    }
  } catch (const Error& e) {
    r["errors"].push_back(error_json(e));
    result.exit_code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    r["errors"].push_back({{"code", "Internal"}, {"message", e.what()}});
    result.exit_code = kExitNumerical;
  }
  r["exit_code"] = result.exit_code;
  if (c.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    r["timing"] = {{"seconds", dt.count()}};
  }
  return result;
}

namespace {

std::vector<double> parse_csv(const std::string& text, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(d))
      throw Error(ErrorCode::InvalidArgument, std::string(flag) + ": bad number '" + item + "'");
    v.push_back(d);
  }
  if (v.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is empty");
  return v;
}

int parse_order(const char* text, const char* source) {
  std::size_t used = 0;
  int k = 0;
  const std::string s(text);
  try {
    k = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, std::string(source) + ": bad jet order '" + s + "'");
  return k;
}

// Pulls --tol.PRED T / --tol.PRED=T out of argv; CLI11 does not know the
// predicate names.
std::vector<std::string> extract_tol_overrides(int argc, const char* const* argv,
                                               std::map<std::string, double, std::less<>>& overrides) {
  std::vector<std::string> rest;
  const std::string prefix = "--tol.";
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (!a.starts_with(prefix)) {
      rest.push_back(std::move(a));
      continue;
    }
    std::string name = a.substr(prefix.size());
    std::string value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name.resize(eq);
    } else if (i + 1 < argc) {
      value = argv[++i];
    } else {
      throw Error(ErrorCode::InvalidArgument, a + " needs a value");
    }
    const auto& names = predicate_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error(ErrorCode::InvalidArgument, "unknown predicate '" + name + "' in --tol." + name);
    std::size_t used = 0;
    double t = -1.0;
    try {
      t = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !(t >= 0.0) || !std::isfinite(t))
      throw Error(ErrorCode::InvalidArgument, "bad tolerance '" + value + "' for " + name);
    overrides[name] = t;
  }
  return rest;
}

void print_diagnostics(const json& report, const std::string& path, std::ostream& err) {
  for (const json& e : report["errors"]) {
    if (e.contains("line")) {
      err << path << ":" << e["line"].get<int>() << ":" << e["column"].get<int>() << ": "
          << e["code"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
    } else {
      err << "fcl: " << e["code"].get<std::string>() << ": " << e["message"].get<std::string>();
      if (e.contains("sample")) err << " (sample " << e["sample"].get<int>() << ")";
      err << "\n";
    }
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const char* env_order) {
  RunConfig c;
  std::vector<std::string> args;
  try {
    if (env_order && *env_order) c.order = parse_order(env_order, "FCL_JET_ORDER");
    args = extract_tol_overrides(argc, argv, c.tol_overrides);
  } catch (const Error& e) {
    err << "fcl: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Finsler curvature engine"};
  app.require_subcommand(1);
  std::string domain = c.domain.to_string();
  std::string format = "text";
  std::string suite = "universal";
  std::string x0, y0;
  bool no_timing = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--metric", c.metric_path, "metric file")->required();
    sub->add_option("--order", c.order, "jet order");
    sub->add_option("--out", format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--no-timing", no_timing, "omit the timing block");
    sub->add_option("--threads", c.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  };
  auto sampled = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--samples", c.samples, "sample count")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--domain", domain, "ball:R or box:A");
  };

  CLI::App* report = app.add_subcommand("report", "curvature tensors and fits at sampled points");
  sampled(report);
  report->add_flag("--rank4", c.rank4, "print rank-4 tensors in text output");
  CLI::App* classify = app.add_subcommand("classify", "predicate verdicts over sampled points");
  sampled(classify);
  classify->add_option("--tol", c.tol, "predicate tolerance")->check(CLI::NonNegativeNumber);
  CLI::App* verify = app.add_subcommand("verify", "identity suite over sampled points");
  sampled(verify);
  verify->add_option("--tol", c.tol, "identity tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--suite", suite, "universal, gib or all");
  CLI::App* geodesic = app.add_subcommand("geodesic", "integrate a geodesic and run diagnostics along it");
  common(geodesic);
  geodesic->add_option("--x0", x0, "start point, comma separated")->required();
  geodesic->add_option("--y0", y0, "start velocity, comma separated")->required();
  geodesic->add_option("--tmax", c.tmax, "final time");
  geodesic->add_option("--steps", c.steps, "RK4 steps");
  geodesic->add_option("--tol", c.tol, "diagnostic tolerance")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fcl: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*report) c.subcommand = Subcommand::report;
    if (*classify) c.subcommand = Subcommand::classify;
    if (*verify) c.subcommand = Subcommand::verify;
    if (*geodesic) c.subcommand = Subcommand::geodesic;
    if (!c.tol_overrides.empty() && c.subcommand != Subcommand::classify)
      throw Error(ErrorCode::InvalidArgument, "--tol.PRED only applies to classify");
    c.domain = Domain::parse(domain);
    c.suite = parse_suite(suite);
    if (c.subcommand == Subcommand::geodesic) {
      c.x0 = parse_csv(x0, "--x0");
      c.y0 = parse_csv(y0, "--y0");
    }
  } catch (const Error& e) {
    err << "fcl: " << e.what() << "\n";
    return kExitUsage;
  }
  c.json = format == "json";
  c.timing = !no_timing;

  const RunResult result = run(c);
  print_diagnostics(result.report, c.metric_path, err);
  if (c.json) {
    out << result.report.dump(2) << "\n";
  } else {
    out << render_text(result.report, c.rank4);
  }
  return result.exit_code;
}

}  // namespace fcl
