#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "fcl/classify/classify.hpp"
#include "fcl/classify/surface.hpp"
#include "fcl/curvature/identities.hpp"
#include "support.hpp"

using namespace fcl;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<BasePoint> points(int n, int count, std::uint64_t seed, double r = 0.8) {
  test::Gen gen(seed);
  std::vector<BasePoint> v;
  for (int i = 0; i < count; ++i) v.push_back(gen.point(n, r));
  return v;
}

const IdentityReport& find(const std::vector<IdentityReport>& v, const std::string& id) {
  for (const auto& r : v)
    if (r.id == id) return r;
  FAIL("missing identity " << id);
  return v.front();
}

std::set<std::string> true_predicates(const ClassificationRecord& r) {
  std::set<std::string> s;
  for (const auto& p : r.predicates)
    if (p.verdict) s.insert(p.name);
  return s;
}

}  // namespace

TEST_CASE("identity catalog per suite", "[identities]") {
  const auto u = identity_catalog(Suite::universal);
  const auto g = identity_catalog(Suite::gib);
  const auto a = identity_catalog(Suite::all);
  REQUIRE(u.size() == 8);
  REQUIRE(a.size() == u.size() + g.size());
  for (const auto& i : u) REQUIRE(i.condition == IdentityInfo::Condition::none);
  for (const auto& i : g) REQUIRE(i.condition != IdentityInfo::Condition::none);
  REQUIRE(parse_suite("all") == Suite::all);
  REQUIRE_THROWS_AS(parse_suite("most"), Error);
}

TEST_CASE("universal identities hold on every catalog metric", "[identities]") {
  for (const char* name : {"funk2", "funk3", "euclid3", "randers2", "randers3", "riemannian3", "sphere2"}) {
    INFO(name);
    const MetricField m = test::catalog(name);
    const auto pts = points(m.dim(), 6, 31, 0.8);
    for (const IdentityReport& r : verify_identities(m, pts, {.suite = Suite::universal})) {
      INFO(r.id << " " << r.reason);
      REQUIRE(r.verdict == Verdict::pass);
      REQUIRE(r.samples == 6);
      REQUIRE(*r.max_residual <= 1e-8);
    }
  }
}

TEST_CASE("conditional identities are gated by their hypotheses", "[identities]") {
  {
    const MetricField m = test::catalog("randers3");
    const auto reps = verify_identities(m, points(3, 4, 32), {.suite = Suite::all});
    REQUIRE(find(reps, "gib_decomposition").verdict == Verdict::skipped);
    REQUIRE_THAT(find(reps, "gib_decomposition").reason, Catch::Matchers::ContainsSubstring("GIB fit residual"));
    REQUIRE(find(reps, "scalar_flag_riemann").verdict == Verdict::skipped);
    REQUIRE(find(reps, "bianchi_cyclic").verdict == Verdict::pass);
  }
  {
    const MetricField m = test::catalog("funk2");
    const auto reps = verify_identities(m, points(2, 4, 33), {.suite = Suite::gib});
    REQUIRE(find(reps, "gib_douglas_form").verdict == Verdict::skipped);
    REQUIRE(find(reps, "gib_douglas_form").reason == "requires dimension >= 3");
    REQUIRE(find(reps, "gib_decomposition").verdict == Verdict::pass);
    REQUIRE(find(reps, "scalar_flag_gib_kkc").verdict == Verdict::pass);
  }
  {
    const MetricField m = test::catalog("funk3");
    const auto reps = verify_identities(m, {}, {.suite = Suite::all});
    for (const auto& r : reps) {
      REQUIRE(r.verdict == Verdict::skipped);
      REQUIRE(r.reason == "no samples");
    }
  }
}

TEST_CASE("identity reports do not depend on the thread count", "[identities]") {
  const MetricField m = test::catalog("funk3");
  const auto pts = points(3, 8, 34);
  const auto a = verify_identities(m, pts, {.suite = Suite::all, .threads = 1});
  const auto b = verify_identities(m, pts, {.suite = Suite::all, .threads = 4});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].max_residual == b[i].max_residual);
    REQUIRE(a[i].worst_sample == b[i].worst_sample);
  }
}

TEST_CASE("catalog classification", "[classify]") {
  struct Case {
    const char* name;
    std::set<std::string> must_hold;
    std::set<std::string> must_fail;
  };
  const std::vector<Case> cases = {
      {"euclid2", {"riemannian", "berwald", "landsberg", "douglas", "gdw", "r_quadratic", "scalar_flag", "h_zero"}, {}},
      {"funk2",
       {"douglas", "gdw", "gib", "isotropic_berwald", "rel_isotropic_landsberg", "scalar_flag", "h_zero"},
       {"riemannian", "berwald", "weakly_berwald", "landsberg", "stretch", "r_quadratic"}},
      {"funk3",
       {"douglas", "gdw", "gib", "isotropic_berwald", "rel_isotropic_landsberg", "scalar_flag", "h_zero"},
       {"riemannian", "berwald", "landsberg", "stretch", "r_quadratic"}},
      {"randers2", {"gib", "gdw"}, {"riemannian", "berwald", "douglas"}},
      {"randers3", {}, {"riemannian", "berwald", "gib", "douglas", "scalar_flag"}},
      {"riemannian3",
       {"riemannian", "berwald", "weakly_berwald", "landsberg", "stretch", "douglas", "gdw", "r_quadratic", "h_zero"},
       {"scalar_flag"}},
      {"sphere2", {"riemannian", "berwald", "scalar_flag", "r_quadratic"}, {}},
  };
  for (const Case& c : cases) {
    INFO(c.name);
    const MetricField m = test::catalog(c.name);
    const ClassificationRecord r = predicates(m, points(m.dim(), 8, 35), {.tol_overrides = {}, .seed = 35});
    const auto held = true_predicates(r);
    for (const auto& p : c.must_hold) {
      INFO(p << " residual " << r.at(p).residual.value_or(NAN));
      REQUIRE(held.count(p));
    }
    for (const auto& p : c.must_fail) {
      INFO(p);
      REQUIRE_FALSE(held.count(p));
    }
    REQUIRE(r.violations.empty());
    REQUIRE(r.predicates.size() == predicate_names().size());
    REQUIRE(r.seed == 35);
  }
}

TEST_CASE("per-predicate tolerance overrides", "[classify]") {
  const MetricField m = test::catalog("randers2");
  const auto pts = points(2, 5, 36);
  const ClassificationRecord strict = predicates(m, pts);
  REQUIRE_FALSE(strict.at("douglas").verdict);
  ClassifyOptions loose;
  loose.tol_overrides["douglas"] = 1e3;
  const ClassificationRecord r = predicates(m, pts, loose);
  REQUIRE(r.at("douglas").verdict);
  REQUIRE(r.at("douglas").tolerance == 1e3);
  REQUIRE(r.at("berwald").tolerance == 1e-6);
}

TEST_CASE("no samples gives no verdicts", "[classify]") {
  const ClassificationRecord r = predicates(test::catalog("funk2"), {});
  for (const auto& p : r.predicates) {
    REQUIRE_FALSE(p.verdict);
    REQUIRE(p.note == "no samples");
  }
}

TEST_CASE("Berwald frame of a surface", "[classify][surface]") {
  const MetricField m = test::catalog("funk2");
  test::Gen gen(37);
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(2, 0.85);
    CurvatureFields cf(m, p);
    const SurfaceFrame fr = surface_frame(cf);
    const Tensor<double> g = values(cf.g()), C = values(cf.cartan());
    double mm = 0, lm = 0, ll = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        mm += g(i, j) * fr.m(i) * fr.m(j);
        lm += g(i, j) * fr.ell(i) * fr.m(j);
        ll += g(i, j) * fr.ell(i) * fr.ell(j);
      }
    REQUIRE_THAT(mm, WithinAbs(1, 1e-12));
    REQUIRE_THAT(lm, WithinAbs(0, 1e-12));
    REQUIRE_THAT(ll, WithinAbs(1, 1e-12));
    REQUIRE(fr.ell(0) * fr.m(1) - fr.ell(1) * fr.m(0) > 0);
    // C_ijk = F^-1 I m_i m_j m_k
    double ml[2];
    for (int i = 0; i < 2; ++i) ml[i] = g(i, 0) * fr.m(0) + g(i, 1) * fr.m(1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) REQUIRE_THAT(C(i, j, k), WithinAbs(fr.I / fr.F * ml[i] * ml[j] * ml[k], 1e-12));
    const SurfaceScalars sc = surface_gib_scalars(fr);
    REQUIRE_THAT(sc.mu, WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(2 * fr.F * sc.lambda, WithinAbs(1.0, 1e-9));
    REQUIRE(std::abs(douglas_2d_criterion(cf)) < 1e-9);
  }
}

TEST_CASE("surface Douglas criterion separates Douglas surfaces", "[classify][surface]") {
  test::Gen gen(38);
  double worst = 0;
  for (int s = 0; s < 5; ++s) worst = std::max(worst, std::abs(douglas_2d_criterion(test::catalog("randers2"), gen.point(2))));
  REQUIRE(worst > 1e-3);
  REQUIRE_THROWS_AS(surface_frame(test::catalog("funk3"), BasePoint({0, 0, 0}, {1, 0, 0})), Error);
  REQUIRE_THROWS_AS(surface_gib_scalars(surface_frame(test::catalog("euclid2"), BasePoint({0, 0}, {1, 0}))), Error);
}
