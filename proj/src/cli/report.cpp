#include "fcl/cli/report.hpp"

#include <cmath>
#include <sstream>

#include "fcl/cli/run.hpp"

namespace fcl {

using nlohmann::json;

void put_number(json& obj, const std::string& key, double v, const std::string& reason) {
  if (std::isfinite(v)) {
    obj[key] = v;
  } else {
    obj[key] = nullptr;
    obj[key + "_reason"] = reason;
  }
}

json tensor_block(const std::string& symbol, const std::string& name, const Tensor<double>& t) {
  json b;
  b["symbol"] = symbol;
  b["name"] = name;
  b["variance"] = variance_signature(t.variance());
  b["shape"] = std::vector<int>(t.rank(), t.dim());
  json data = json::array();
  bool finite = true;
  for (double v : t.data()) {
    if (std::isfinite(v)) {
      data.push_back(v);
    } else {
      data.push_back(nullptr);
      finite = false;
    }
  }
  b["data"] = std::move(data);
  if (!finite) b["data_reason"] = "non-finite entries";
  return b;
}

json error_json(const Error& e) {
  json j{{"code", std::string(to_string(e.code()))}, {"message", e.detail()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["message"] = pe->message();
    j["line"] = pe->line();
    j["column"] = pe->column();
  }
  return j;
}

json point_json(const BasePoint& p) {
  return {{"x", std::vector<double>(p.x().begin(), p.x().end())},
          {"y", std::vector<double>(p.y().begin(), p.y().end())}};
}

json identity_json(const IdentityReport& r) {
  json j{{"id", r.id},
         {"statement", r.statement},
         {"samples", r.samples},
         {"tolerance", r.tolerance},
         {"verdict", std::string(to_string(r.verdict))}};
  if (r.max_residual) {
    put_number(j, "max_residual", *r.max_residual);
  } else {
    j["max_residual"] = nullptr;
    j["max_residual_reason"] = r.reason;
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.worst_sample >= 0) j["worst_sample"] = r.worst_sample;
  return j;
}

json classification_json(const ClassificationRecord& r) {
  json preds = json::array();
  for (const PredicateResult& p : r.predicates) {
    json j{{"name", p.name}, {"tolerance", p.tolerance}, {"verdict", p.verdict}};
    if (p.residual) {
      put_number(j, "residual", *p.residual);
    } else {
      j["residual"] = nullptr;
      j["residual_reason"] = p.note;
    }
    if (!p.note.empty()) j["note"] = p.note;
    preds.push_back(std::move(j));
  }
  return {{"predicates", preds},
          {"implications", r.implications},
          {"violations", r.violations},
          {"seed", r.seed},
          {"samples", r.samples},
          {"tolerance", r.tolerance}};
}

json path_json(const GeodesicPath& path) {
  json samples = json::array();
  for (const GeodesicSample& s : path.samples) samples.push_back({{"t", s.t}, {"x", s.x}, {"v", s.v}});
  json j{{"step", path.step}, {"method_order", path.method_order}, {"left_domain", path.left_domain},
         {"samples", samples}};
  if (path.left_domain) j["truncation"] = path.truncation;
  return j;
}

json diagnostics_json(const GeodesicDiagnostics& d) {
  json j;
  put_number(j, "F0", d.F0);
  put_number(j, "f_defect", d.f_defect);
  put_number(j, "max_gib_residual", d.max_gib_residual);
  put_number(j, "max_stretch", d.max_stretch);
  j["stretch_index"] = d.stretch_index;
  j["stretch_norm"] = d.stretch_norm;
  j["st5_expected_zero"] = d.st5_expected_zero;
  j["riemannian_degenerate"] = d.riemannian_degenerate;
  if (d.riemannian_degenerate) {
    j["mu"] = nullptr;
    j["mu_reason"] = d.note;
    j["st5"] = nullptr;
    j["st5_reason"] = d.note;
    j["max_st5"] = nullptr;
    j["max_st5_reason"] = d.note;
  } else {
    j["mu"] = d.mu;
    j["st5"] = d.st5;
    put_number(j, "max_st5", d.max_st5);
  }
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

namespace {

std::string num(const json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Nested bracket form of a row-major block.
void print_nested(std::ostream& os, const json& data, int dim, int rank, std::size_t& pos) {
  if (rank == 0) {
    os << num(data[pos++]);
    return;
  }
  os << "[";
  for (int i = 0; i < dim; ++i) {
    if (i) os << ", ";
    print_nested(os, data, dim, rank - 1, pos);
  }
  os << "]";
}

void print_tensor(std::ostream& os, const json& b, bool rank4) {
  const int rank = static_cast<int>(b["shape"].size());
  os << "  " << b["symbol"].get<std::string>() << " [" << b["variance"].get<std::string>() << "] ("
     << b["name"].get<std::string>() << ")";
  if (b.contains("error")) {
    os << ": error " << b["error"]["code"].get<std::string>() << ": " << b["error"]["message"].get<std::string>()
       << "\n";
    return;
  }
  if (rank >= 4 && !rank4) {
    os << ": rank " << rank << ", shown with --rank4\n";
    return;
  }
  const int dim = rank == 0 ? 1 : b["shape"][0].get<int>();
  std::size_t pos = 0;
  os << " = ";
  print_nested(os, b["data"], dim, rank, pos);
  os << "\n";
}

void print_errors(std::ostream& os, const json& errors, const std::string& indent) {
  for (const json& e : errors) {
    os << indent << "error " << e["code"].get<std::string>();
    if (e.contains("line")) os << " at " << e["line"].get<int>() << ":" << e["column"].get<int>();
    os << ": " << e["message"].get<std::string>() << "\n";
  }
}

void print_scalars(std::ostream& os, const json& scalars) {
  for (auto it = scalars.begin(); it != scalars.end(); ++it) {
    if (it.key().ends_with("_reason")) continue;
    os << "  " << it.key() << " = " << num(it.value());
    if (it.value().is_null() && scalars.contains(it.key() + "_reason"))
      os << " (" << scalars[it.key() + "_reason"].get<std::string>() << ")";
    os << "\n";
  }
}

}  // namespace

std::string render_text(const json& r, bool rank4) {
  std::ostringstream os;
  os << "fcl " << r.value("subcommand", "?");
  if (r.contains("config")) {
    const json& c = r["config"];
    for (auto it = c.begin(); it != c.end(); ++it) os << " " << it.key() << "=" << num(it.value());
  }
  os << "\n";
  if (r.contains("metric")) {
    os << "metric: " << r["metric"]["kind"].get<std::string>() << ", n = " << r["metric"]["dim"].get<int>() << "\n";
  }
  if (r.contains("samples")) {
    if (r["samples"].empty()) os << "no samples\n";
    for (const json& s : r["samples"]) {
      os << "sample " << s["index"].get<int>() << ": x = " << s["point"]["x"].dump() << ", y = "
         << s["point"]["y"].dump() << "\n";
      if (s.contains("scalars")) print_scalars(os, s["scalars"]);
      if (s.contains("tensors"))
        for (const json& b : s["tensors"]) print_tensor(os, b, rank4);
      if (s.contains("errors")) print_errors(os, s["errors"], "  ");
    }
  }
  if (r.contains("identities")) {
    for (const json& id : r["identities"]) {
      char line[160];
      std::snprintf(line, sizeof line, "%-8s %-32s max residual %s (tol %s)", id["verdict"].get<std::string>().c_str(),
                    id["id"].get<std::string>().c_str(), num(id["max_residual"]).c_str(),
                    num(id["tolerance"]).c_str());
      os << line;
      if (id.contains("reason")) os << "  " << id["reason"].get<std::string>();
      os << "\n";
    }
  }
  if (r.contains("classification")) {
    const json& c = r["classification"];
    for (const json& p : c["predicates"]) {
      char line[160];
      std::snprintf(line, sizeof line, "%-24s %-5s residual %s (tol %s)", p["name"].get<std::string>().c_str(),
                    p["verdict"].get<bool>() ? "true" : "false", num(p["residual"]).c_str(),
                    num(p["tolerance"]).c_str());
      os << line;
      if (p.contains("note")) os << "  " << p["note"].get<std::string>();
      os << "\n";
    }
    for (const json& v : c["violations"]) os << "implication violated: " << v.get<std::string>() << "\n";
  }
  if (r.contains("geodesic")) {
    const json& g = r["geodesic"];
    const json& path = g["path"];
    const json& last = path["samples"].back();
    os << "path: " << path["samples"].size() << " samples, step " << num(path["step"]) << ", end t = " << num(last["t"])
       << ", x = " << last["x"].dump() << "\n";
    if (path["left_domain"].get<bool>()) os << "  " << path["truncation"].get<std::string>() << "\n";
    if (g.contains("diagnostics")) {
      const json& d = g["diagnostics"];
      os << "F constancy defect: " << num(d["f_defect"]) << "\n";
      os << "max GIB residual: " << num(d["max_gib_residual"]) << "\n";
      os << "max stretch norm: " << num(d["max_stretch"]) << "\n";
      os << "max St5 defect 2 dmu/dt - mu^2 F: " << num(d["max_st5"])
         << (d["st5_expected_zero"].get<bool>() ? " (stretch vanishes: expected 0)" : " (stretch nonzero: not expected 0)")
         << "\n";
      if (d.contains("note")) os << "  " << d["note"].get<std::string>() << "\n";
    }
    if (g.contains("checks"))
      for (auto it = g["checks"].begin(); it != g["checks"].end(); ++it)
        os << "check " << it.key() << ": " << (it.value().get<bool>() ? "pass" : "fail") << "\n";
  }
  if (r.contains("errors")) print_errors(os, r["errors"], "");
  if (r.contains("timing")) os << "time: " << num(r["timing"]["seconds"]) << " s\n";
  os << "exit code " << r.value("exit_code", 0) << "\n";
  return os.str();
}

}  // namespace fcl
