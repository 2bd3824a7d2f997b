#include "fcl/curvature/identities.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "fcl/curvature/curvature.hpp"
#include "fcl/parallel.hpp"

namespace fcl {

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::universal: return "universal";
    case Suite::gib: return "gib";
    case Suite::all: return "all";
  }
  return "?";
}

Suite parse_suite(std::string_view text) {
  if (text == "universal") return Suite::universal;
  if (text == "gib") return Suite::gib;
  if (text == "all") return Suite::all;
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(text) + "'; expected universal, gib or all");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

namespace {

using Cond = IdentityInfo::Condition;
using T = Tensor<double>;

const std::vector<IdentityInfo>& all_identities() {
  static const std::vector<IdentityInfo> list = {
      {"bianchi_cyclic",
       "R^i_jkl|m + R^i_jlm|k + R^i_jmk|l = B^i_jku R^u_lm + B^i_jlu R^u_mk + B^i_jmu R^u_kl, R^u_lm = y^j R^u_jml",
       Cond::none, 2},
      {"bianchi_berwald_riemann", "B^i_jml|k - B^i_jmk|l = R^i_jkl,m", Cond::none, 2},
      {"berwald_vertical_symmetry", "B^i_jkl,m = B^i_jkm,l", Cond::none, 2},
      {"landsberg_riemann",
       "L_ijk|m y^m + C_ijm R^m_k = -1/3 (g_im R^m_k,j + g_jm R^m_k,i) - 1/6 (g_im R^m_j,k + g_jm R^m_i,k)",
       Cond::none, 2},
      {"mean_landsberg_riemann", "J_k|m y^m + I_m R^m_k = -1/3 (2 R^m_k,m + R^m_m,k)", Cond::none, 2},
      {"stretch_riemann_contraction", "y_i R^i_jkl,m = Sigma_jmkl", Cond::none, 2},
      {"angular_vertical_derivative", "h_ij,k = 2 C_ijk - F^-2 (y_j h_ik + y_i h_jk)", Cond::none, 2},
      {"berwald_landsberg_contraction", "y_i B^i_jkl = -2 L_jkl", Cond::none, 2},
      {"gib_decomposition", "B^i_jkl = mu C_jkl l^i + lambda (h^i_j h_kl + h^i_k h_jl + h^i_l h_jk)", Cond::gib, 2},
      {"gib_mean_berwald_trace", "E_jk = (n+1)/2 lambda h_jk", Cond::gib, 2},
      {"gib_mu_projection", "mu C_jkl = -2 F^-1 L_jkl", Cond::gib, 2},
      {"gib_landsberg_cartan", "L_ijk = -1/2 mu F C_ijk", Cond::gib, 2},
      {"gib_lambda_vertical", "lambda y_l F^-2 + lambda_,l = 0", Cond::gib, 3},
      {"gib_douglas_form", "D^i_jkl = -2 (F^-2 L_jkl + lambda C_jkl) y^i", Cond::gib, 3},
      {"gib_gdw_form", "D^i_jkl|s y^s = -2 (F^-2 L_jkl|s y^s + lambda' C_jkl + lambda L_jkl) y^i", Cond::gib, 3},
      {"scalar_flag_riemann", "R^i_k = K F^2 h^i_k", Cond::scalar_flag, 2},
      {"scalar_flag_mean_landsberg", "J_k|m y^m = -1/3 F^2 ((n+1) K_,k + 3 K I_k)", Cond::scalar_flag, 2},
      {"scalar_flag_gib_kkc", "(n+1)/3 K_,k + (K + mu^2/4 - mu'/(2F)) I_k = 0", Cond::gib_and_scalar_flag, 2},
  };
  return list;
}

T make(int n, const char* sig, const std::function<double(const Index&)>& fn) {
  return T::generate(n, slots(sig), fn);
}

T zeros_like(const T& t) { return T(t.dim(), t.variance(), 0.0); }

// Lazily computed values shared by the identities at one point.
struct PointValues {
  CurvatureFields& cf;
  int n;
  std::map<std::string, T> cache;

  const T& get(const std::string& key, const std::function<JetTensor()>& build) {
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, values(build())).first;
    return it->second;
  }
  const T& B() { return get("B", [&] { return cf.berwald(); }); }
  const T& Bh() { return get("Bh", [&] { return h_derivative(cf, cf.berwald()); }); }
  const T& Bv() { return get("Bv", [&] { return v_derivative(cf.berwald()); }); }
  const T& R() { return get("R", [&] { return cf.riemann(); }); }
  const T& Rh() { return get("Rh", [&] { return h_derivative(cf, cf.riemann()); }); }
  const T& Rv() { return get("Rv", [&] { return v_derivative(cf.riemann()); }); }
  const T& Rk() { return get("Rk", [&] { return cf.riemann_k(); }); }
  const T& Rkv() { return get("Rkv", [&] { return v_derivative(cf.riemann_k()); }); }
  const T& C() { return get("C", [&] { return cf.cartan(); }); }
  const T& I() { return get("I", [&] { return cf.mean_cartan(); }); }
  const T& L() { return get("L", [&] { return cf.landsberg(); }); }
  const T& Lf() { return get("Lf", [&] { return geodesic_contraction(cf, cf.landsberg()); }); }
  const T& Jf() { return get("Jf", [&] { return geodesic_contraction(cf, cf.mean_landsberg()); }); }
  const T& g() { return get("g", [&] { return cf.g(); }); }
  const T& h() { return get("h", [&] { return cf.angular(); }); }
  const T& hv() { return get("hv", [&] { return v_derivative(cf.angular()); }); }
  const T& yl() { return get("yl", [&] { return cf.y_low(); }); }
  double y(int i) const { return cf.base().y()[i]; }
  double F() { return cf.F().value(); }
  double mu() { return cf.riemannian_degenerate() ? 0.0 : cf.mu_field().value(); }
  double mu_prime() {
    return cf.riemannian_degenerate() ? 0.0 : flow_derivative(cf, scalar_tensor(cf.mu_field())).data()[0].value();
  }
  double lambda() { return cf.lambda_field().value(); }
};

double residual(PointValues& v, const std::string& id) {
  const int n = v.n;
  if (id == "bianchi_cyclic") {
    const T& R = v.R();
    const T& Rh = v.Rh();
    const T& B = v.B();
    const T R2 = make(n, "ull", [&](const Index& i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += v.y(j) * R(i[0], j, i[2], i[1]);
      return s;
    });
    const T lhs = make(n, "ullll", [&](const Index& I) {
      const int i = I[0], j = I[1], k = I[2], l = I[3], m = I[4];
      return Rh(i, j, k, l, m) + Rh(i, j, l, m, k) + Rh(i, j, m, k, l);
    });
    const T rhs = make(n, "ullll", [&](const Index& I) {
      const int i = I[0], j = I[1], k = I[2], l = I[3], m = I[4];
      double s = 0.0;
      for (int u = 0; u < n; ++u) s += B(i, j, k, u) * R2(u, l, m) + B(i, j, l, u) * R2(u, m, k) + B(i, j, m, u) * R2(u, k, l);
      return s;
    });
    return scaled_residual(lhs, rhs);
  }
  if (id == "bianchi_berwald_riemann") {
    const T& Bh = v.Bh();
    const T& Rv = v.Rv();
    const T lhs = make(n, "ullll", [&](const Index& I) {
      const int i = I[0], j = I[1], k = I[2], l = I[3], m = I[4];
      return Bh(i, j, m, l, k) - Bh(i, j, m, k, l);
    });
    return scaled_residual(lhs, Rv);
  }
  if (id == "berwald_vertical_symmetry") {
    const T& Bv = v.Bv();
    const T swapped = make(n, "ullll", [&](const Index& I) { return Bv(I[0], I[1], I[2], I[4], I[3]); });
    return scaled_residual(Bv, swapped);
  }
  if (id == "landsberg_riemann") {
    const T& Lf = v.Lf();
    const T& C = v.C();
    const T& Rk = v.Rk();
    const T& Rkv = v.Rkv();
    const T& g = v.g();
    const T lhs = make(n, "lll", [&](const Index& I) {
      double s = Lf(I[0], I[1], I[2]);
      for (int m = 0; m < n; ++m) s += C(I[0], I[1], m) * Rk(m, I[2]);
      return s;
    });
    const T rhs = make(n, "lll", [&](const Index& I) {
      const int i = I[0], j = I[1], k = I[2];
      double s = 0.0;
      for (int m = 0; m < n; ++m) {
        s -= (g(i, m) * Rkv(m, k, j) + g(j, m) * Rkv(m, k, i)) / 3.0;
        s -= (g(i, m) * Rkv(m, j, k) + g(j, m) * Rkv(m, i, k)) / 6.0;
      }
      return s;
    });
    return scaled_residual(lhs, rhs);
  }
  if (id == "mean_landsberg_riemann") {
    const T& Jf = v.Jf();
    const T& I = v.I();
    const T& Rk = v.Rk();
    const T& Rkv = v.Rkv();
    const T lhs = make(n, "l", [&](const Index& K) {
      double s = Jf(K[0]);
      for (int m = 0; m < n; ++m) s += I(m) * Rk(m, K[0]);
      return s;
    });
    const T rhs = make(n, "l", [&](const Index& K) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += 2.0 * Rkv(m, K[0], m) + Rkv(m, m, K[0]);
      return -s / 3.0;
    });
    return scaled_residual(lhs, rhs);
  }
  if (id == "stretch_riemann_contraction") {
    const T& Rv = v.Rv();
    const T& yl = v.yl();
    const T sigma = values(v.cf.stretch());
    const T lhs = make(n, "llll", [&](const Index& I) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += yl(i) * Rv(i, I[0], I[1], I[2], I[3]);
      return s;
    });
    const T rhs = make(n, "llll", [&](const Index& I) { return sigma(I[0], I[3], I[1], I[2]); });
    return scaled_residual(lhs, rhs);
  }
  if (id == "angular_vertical_derivative") {
    const T& hv = v.hv();
    const T& C = v.C();
    const T& h = v.h();
    const T& yl = v.yl();
    const double w = 1.0 / (v.F() * v.F());
    const T rhs = make(n, "lll", [&](const Index& I) {
      const int i = I[0], j = I[1], k = I[2];
      return 2.0 * C(i, j, k) - w * (yl(j) * h(i, k) + yl(i) * h(j, k));
    });
    return scaled_residual(hv, rhs);
  }
  if (id == "berwald_landsberg_contraction") {
    return scaled_residual(values(v.cf.landsberg_from_berwald()), v.L());
  }
  if (id == "gib_decomposition") return scaled_residual(v.B(), values(v.cf.gib_model()));
  if (id == "gib_mean_berwald_trace") {
    const T E = values(v.cf.mean_berwald());
    return scaled_residual(E, v.h() * ((n + 1) / 2.0 * v.lambda()));
  }
  if (id == "gib_mu_projection") return scaled_residual(v.C() * v.mu(), v.L() * (-2.0 / v.F()));
  if (id == "gib_landsberg_cartan") return scaled_residual(v.L(), v.C() * (-0.5 * v.mu() * v.F()));
  if (id == "gib_lambda_vertical") {
    const Jet& lambda = v.cf.lambda_field();
    const double w = 1.0 / (v.F() * v.F());
    const T& yl = v.yl();
    const T lhs = make(n, "l", [&](const Index& l) { return lambda.value() * yl(l[0]) * w + lambda.dy(l[0]).value(); });
    return scaled_residual(lhs, zeros_like(lhs));
  }
  if (id == "gib_douglas_form") {
    const T D = values(v.cf.douglas());
    const T& L = v.L();
    const T& C = v.C();
    const double w = 1.0 / (v.F() * v.F()), lambda = v.lambda();
    const T rhs = make(n, "ulll", [&](const Index& I) {
      return -2.0 * (w * L(I[1], I[2], I[3]) + lambda * C(I[1], I[2], I[3])) * v.y(I[0]);
    });
    return scaled_residual(D, rhs);
  }
  if (id == "gib_gdw_form") {
    const T Df = values(v.cf.douglas_flow());
    const T& Lf = v.Lf();
    const T& L = v.L();
    const T& C = v.C();
    const double w = 1.0 / (v.F() * v.F()), lambda = v.lambda();
    const double lambda_prime = flow_derivative(v.cf, scalar_tensor(v.cf.lambda_field())).data()[0].value();
    const T rhs = make(n, "ulll", [&](const Index& I) {
      const int j = I[1], k = I[2], l = I[3];
      return -2.0 * (w * Lf(j, k, l) + lambda_prime * C(j, k, l) + lambda * L(j, k, l)) * v.y(I[0]);
    });
    return scaled_residual(Df, rhs);
  }
  if (id == "scalar_flag_riemann") return scaled_residual(v.Rk(), values(v.cf.scalar_flag_model()));
  if (id == "scalar_flag_mean_landsberg") {
    const Jet& K = v.cf.flag_field();
    const T& I = v.I();
    const double F2 = v.F() * v.F();
    const T rhs = make(n, "l", [&](const Index& k) {
      return -F2 / 3.0 * ((n + 1) * K.dy(k[0]).value() + 3.0 * K.value() * I(k[0]));
    });
    return scaled_residual(v.Jf(), rhs);
  }
  if (id == "scalar_flag_gib_kkc") {
    const std::vector<double> r = kkc_residual(v.cf, v.mu(), v.mu_prime(), INFINITY);
    const T t(n, slots("l"), r);
    return scaled_residual(t, zeros_like(t));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown identity '" + id + "'");
}

bool in_suite(const IdentityInfo& info, Suite suite) {
  if (suite == Suite::all) return true;
  return (info.condition == Cond::none) == (suite == Suite::universal);
}

}  // namespace

std::vector<IdentityInfo> identity_catalog(Suite suite) {
  std::vector<IdentityInfo> out;
  for (const IdentityInfo& info : all_identities())
    if (in_suite(info, suite)) out.push_back(info);
  return out;
}

PointIdentities identities_at(CurvatureFields& cf, const std::vector<IdentityInfo>& catalog) {
  PointIdentities out;
  PointValues v{cf, cf.dim(), {}};
  bool conditional = false;
  for (const IdentityInfo& info : catalog) {
    conditional = conditional || info.condition != Cond::none;
    try {
      out.residuals.emplace_back(residual(v, info.id));
      out.errors.emplace_back();
    } catch (const Error& e) {
      out.residuals.emplace_back();
      out.errors.emplace_back(e.what());
    }
  }
  if (conditional) {
    try {
      out.gib_residual = scaled_residual(v.B(), values(cf.gib_model()));
      out.flag_residual = scalar_flag_fit(cf).residual;
    } catch (const Error& e) {
      out.gib_residual = out.flag_residual = NAN;
      out.fit_error = e.what();
    }
  }
  return out;
}

std::vector<IdentityReport> verify_identities(const MetricField& metric, std::span<const BasePoint> samples,
                                              const VerifyOptions& options) {
  const std::vector<IdentityInfo> catalog = identity_catalog(options.suite);
  const int count = static_cast<int>(samples.size());
  std::vector<PointIdentities> points(count);
  parallel_for(count, options.threads, [&](int s) {
    try {
      CurvatureFields cf(metric, samples[s], options.order);
      points[s] = identities_at(cf, catalog);
    } catch (const Error& e) {
      points[s].residuals.assign(catalog.size(), std::nullopt);
      points[s].errors.assign(catalog.size(), e.what());
      points[s].gib_residual = points[s].flag_residual = NAN;
      points[s].fit_error = e.what();
    }
  });

  // Fit applicability over the whole sample set.
  double gib_max = 0.0, flag_max = 0.0;
  std::string fit_error;
  for (const PointIdentities& p : points) {
    gib_max = std::isnan(p.gib_residual) ? NAN : std::max(gib_max, p.gib_residual);
    flag_max = std::isnan(p.flag_residual) ? NAN : std::max(flag_max, p.flag_residual);
    if (fit_error.empty()) fit_error = p.fit_error;
    if (std::isnan(gib_max) && std::isnan(flag_max)) break;
  }
  const bool gib_ok = gib_max <= options.fit_tol;
  const bool flag_ok = flag_max <= options.fit_tol;
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return std::string(buf);
  };

  std::vector<IdentityReport> reports;
  for (std::size_t c = 0; c < catalog.size(); ++c) {
    const IdentityInfo& info = catalog[c];
    IdentityReport r;
    r.id = info.id;
    r.statement = info.statement;
    r.samples = count;
    r.tolerance = options.tol;
    std::string skip;
    if (metric.dim() < info.min_dim) {
      skip = "requires dimension >= " + std::to_string(info.min_dim);
    } else if (count == 0) {
      skip = "no samples";
    } else if ((info.condition == Cond::gib || info.condition == Cond::gib_and_scalar_flag) && !gib_ok) {
      skip = fit_error.empty() ? "GIB fit residual " + fmt(gib_max) + " exceeds " + fmt(options.fit_tol)
                               : "GIB fit failed: " + fit_error;
    } else if ((info.condition == Cond::scalar_flag || info.condition == Cond::gib_and_scalar_flag) && !flag_ok) {
      skip = fit_error.empty() ? "scalar flag fit residual " + fmt(flag_max) + " exceeds " + fmt(options.fit_tol)
                               : "scalar flag fit failed: " + fit_error;
    }
    if (!skip.empty()) {
      r.verdict = Verdict::skipped;
      r.reason = skip;
      reports.push_back(std::move(r));
      continue;
    }
    double worst = 0.0;
    int worst_at = 0;
    std::string failure;
    for (int s = 0; s < count; ++s) {
      const auto& res = points[s].residuals[c];
      if (!res || std::isnan(*res)) {
        failure = "sample " + std::to_string(s) + ": " + (res ? std::string("non-finite residual") : points[s].errors[c]);
        worst_at = s;
        break;
      }
      if (!(*res <= worst)) {
        worst = *res;
        worst_at = s;
      }
    }
    r.worst_sample = worst_at;
    if (!failure.empty()) {
      r.verdict = Verdict::fail;
      r.reason = failure;
    } else {
      r.max_residual = worst;
      r.verdict = worst <= options.tol ? Verdict::pass : Verdict::fail;
      if (r.verdict == Verdict::fail) r.reason = "residual exceeds tolerance";
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace fcl
