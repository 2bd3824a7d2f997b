#include <catch_amalgamated.hpp>

#include <cmath>

#include "fcl/dsl/metric.hpp"
#include "fcl/error.hpp"
#include "support.hpp"

using namespace fcl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Failure {
  ErrorCode code;
  int line = 0;
  int column = 0;
};

Failure parse_failure(std::string_view src) {
  try {
    (void)parse_metric(src);
  } catch (const ParseError& e) {
    return {e.code(), e.line(), e.column()};
  }
  FAIL("expected a parse error for: " << src);
  return {};
}

ErrorCode compile_failure(std::string_view src) {
  try {
    (void)compile_metric(src);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a compile error for: " << src);
  return ErrorCode::InvalidArgument;
}

ExprPtr random_expr(test::Gen& g, int n, int depth) {
  if (depth == 0 || g.below(4) == 0) {
    switch (g.below(3)) {
      case 0: return Expr::literal(std::round(g.uniform(-5, 5) * 100) / 100);
      case 1: return Expr::x(g.below(n));
      default: return Expr::y(g.below(n));
    }
  }
  switch (g.below(7)) {
    case 0: return random_expr(g, n, depth - 1) + random_expr(g, n, depth - 1);
    case 1: return random_expr(g, n, depth - 1) - random_expr(g, n, depth - 1);
    case 2: return random_expr(g, n, depth - 1) * random_expr(g, n, depth - 1);
    case 3: return random_expr(g, n, depth - 1) / random_expr(g, n, depth - 1);
    case 4: return Expr::negate(random_expr(g, n, depth - 1));
    case 5: return Expr::power(random_expr(g, n, depth - 1), g.below(5) - 1);
    default: return Expr::square_root(random_expr(g, n, depth - 1));
  }
}

}  // namespace

TEST_CASE("catalog metrics parse and round-trip through source text", "[dsl]") {
  for (const char* name : {"funk2", "funk3", "euclid2", "euclid3", "randers2", "randers3", "riemannian3", "sphere2"}) {
    INFO(name);
    const MetricSpec spec = parse_metric(test::read_file(test::metrics_dir() + "/" + name + ".fm"));
    const std::string src = to_source(spec);
    REQUIRE(structurally_equal(parse_metric(src), spec));
    REQUIRE(to_source(parse_metric(src)) == src);
  }
}

TEST_CASE("random expressions round-trip", "[dsl][property]") {
  test::Gen g(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + g.below(2);
    const ExprPtr e = random_expr(g, n, 5);
    const std::string src = to_source(*e);
    INFO(src);
    const ExprPtr back = parse_expression(src, n);
    REQUIRE(structurally_equal(*back, *e));
  }
}

TEST_CASE("operator precedence and unary minus", "[dsl]") {
  auto eval = [](const char* text) {
    const ExprPtr e = parse_expression(text, 2);
    struct V {
      double x(int i) const { return i == 0 ? 2.0 : 3.0; }
      double y(int i) const { return i == 0 ? 5.0 : 7.0; }
      double constant(double v) const { return v; }
    };
    return evaluate<double>(*e, V{});
  };
  REQUIRE(eval("1 + 2*3") == 7.0);
  REQUIRE(eval("-2^2") == -4.0);
  REQUIRE(eval("(-2)^2") == 4.0);
  REQUIRE(eval("x[1]^(-1)") == 0.5);
  REQUIRE(eval("x[2] - y[1] - y[2]") == -9.0);
  REQUIRE_THAT(eval("y[2]/x[1]/x[2]"), WithinRel(7.0 / 6.0, 1e-15));
  REQUIRE(eval("sqrt(x[1]*8)") == 4.0);
  REQUIRE_THAT(eval("1e-1 * 10"), WithinRel(1.0, 1e-15));
}

TEST_CASE("parse errors carry line and column", "[dsl]") {
  Failure f = parse_failure("funk(2");
  REQUIRE(f.code == ErrorCode::SyntaxError);
  REQUIRE((f.line == 1 && f.column == 7));

  f = parse_failure("# comment\nfunk(2) extra");
  REQUIRE(f.code == ErrorCode::SyntaxError);
  REQUIRE((f.line == 2 && f.column == 9));

  f = parse_failure("finsler(2)");
  REQUIRE(f.code == ErrorCode::UnknownIdentifier);
  REQUIRE((f.line == 1 && f.column == 1));

  f = parse_failure("custom(2) {\n  y[1]^2 + z[2]\n}");
  REQUIRE(f.code == ErrorCode::UnknownIdentifier);
  REQUIRE((f.line == 2 && f.column == 12));

  f = parse_failure("custom(2) { y[3]^2 }");
  REQUIRE(f.code == ErrorCode::DimensionMismatch);
  REQUIRE(f.column == 15);

  REQUIRE(parse_failure("funk(1)").code == ErrorCode::DimensionMismatch);
  REQUIRE(parse_failure("riemannian(2) { 1, 0; 0 }").code == ErrorCode::DimensionMismatch);
  REQUIRE(parse_failure("riemannian(2) { 1, 0; 0, 1; 1, 1 }").code == ErrorCode::DimensionMismatch);
  REQUIRE(parse_failure("randers(2) { 1, 0; 0, 1 }").code == ErrorCode::DimensionMismatch);
  REQUIRE(parse_failure("riemannian(2) { y[1], 0; 0, 1 }").code == ErrorCode::SyntaxError);
  REQUIRE(parse_failure("custom(2) { y[1] @ 2 }").code == ErrorCode::SyntaxError);
  REQUIRE(parse_failure("").code == ErrorCode::SyntaxError);
}

TEST_CASE("indefinite metrics are rejected at compile time", "[dsl]") {
  REQUIRE(compile_failure("riemannian(2) { -1, 0; 0, 1 }") == ErrorCode::NotPositiveDefinite);
  REQUIRE(compile_failure("custom(2) { y[1]^2 - y[2]^2 }") == ErrorCode::NotPositiveDefinite);
  // |b|_a >= 1 somewhere in the validation ball
  REQUIRE(compile_failure("randers(2) { 1, 0; 0, 1; 1.5, 0 }") == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("built-in kinds evaluate their closed forms", "[dsl][oracle]") {
  test::Gen g(4);
  const MetricField funk = test::catalog("funk3");
  const MetricField randers = test::catalog("randers2");
  const MetricField sphere = test::catalog("sphere2");
  for (int s = 0; s < 20; ++s) {
    const BasePoint p = g.point(3, 0.9);
    const auto x = p.x();
    const auto y = p.y();
    double xx = 0, yy = 0, xy = 0;
    for (int i = 0; i < 3; ++i) {
      xx += x[i] * x[i];
      yy += y[i] * y[i];
      xy += x[i] * y[i];
    }
    const double F = (std::sqrt(yy - (xx * yy - xy * xy)) + xy) / (1 - xx);
    REQUIRE_THAT(funk.F(x, y), WithinRel(F, 1e-13));

    const BasePoint q = g.point(2, 0.9);
    const auto u = q.x();
    const auto v = q.y();
    const double beta = 0.1 * u[1] * v[0] - 0.1 * u[0] * v[1];
    REQUIRE_THAT(randers.F(u, v), WithinRel(std::hypot(v[0], v[1]) + beta, 1e-13));
    const double conf = 2.0 / (1 + u[0] * u[0] + u[1] * u[1]);
    REQUIRE_THAT(sphere.F(u, v), WithinRel(conf * std::hypot(v[0], v[1]), 1e-13));
  }
}

TEST_CASE("funk domain predicate", "[dsl]") {
  const MetricField funk = test::catalog("funk2");
  const MetricField eu = test::catalog("euclid2");
  const std::vector<double> inside{0.5, 0.5}, outside{0.8, 0.8};
  REQUIRE(funk.admissible(inside));
  REQUIRE_FALSE(funk.admissible(outside));
  REQUIRE(eu.admissible(outside));
  const BasePoint p(outside, {1.0, 0.0});
  REQUIRE_THROWS_AS(funk.f2_jet(JetSpace::make(p, 2), 2), Error);
}

TEST_CASE("fundamental eigenvalues of a constant Riemannian metric", "[dsl]") {
  const MetricField m = test::metric("riemannian(2) { 2, 1; 1, 2 }");
  const auto ev = fundamental_eigenvalues(m, BasePoint({0.3, -0.2}, {1.0, 0.4}));
  REQUIRE_THAT(ev[0], WithinAbs(1.0, 1e-13));
  REQUIRE_THAT(ev[1], WithinAbs(3.0, 1e-13));
}
