#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "fcl/error.hpp"
#include "fcl/taylor/fd_oracle.hpp"
#include "fcl/taylor/jet.hpp"
#include "support.hpp"

using namespace fcl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using Exps = std::vector<int>;
using Poly = std::map<Exps, double>;

Poly to_poly(const Jet& j) {
  Poly p;
  const MonomialTable& t = j.table();
  for (int i = 0; i < t.count_upto(j.order()); ++i) {
    const auto e = t.exponents(i);
    p[Exps(e.begin(), e.end())] = j.coefficients()[i];
  }
  return p;
}

int degree(const Exps& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

// Schoolbook product truncated at `order`.
Poly brute_multiply(const Poly& a, const Poly& b, int order) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      if (degree(e) <= order) out[e] += ca * cb;
    }
  }
  return out;
}

Jet random_jet(const JetSpacePtr& space, int order, test::Gen& gen, double c0) {
  const MonomialTable& t = *space->table;
  std::vector<double> c(t.count_upto(order));
  for (double& v : c) v = gen.uniform(-1.0, 1.0);
  c[0] = c0;
  return Jet::from_coefficients(space, order, std::move(c));
}

double binom_half(int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= (0.5 - i) / (i + 1);
  return b;
}

}  // namespace

TEST_CASE("monomial table is graded and consistent", "[taylor]") {
  const MonomialTable& t = MonomialTable::get(4, 5);
  REQUIRE(t.count_upto(0) == 1);
  REQUIRE(t.count_upto(1) == 5);
  REQUIRE(t.count_upto(5) == 126);  // C(9, 4)
  for (int i = 0; i < t.count_upto(5); ++i) {
    const auto e = t.exponents(i);
    const std::vector<int> ev(e.begin(), e.end());
    REQUIRE(t.index_of(ev) == i);
    REQUIRE(t.degree(i) == degree(ev));
    if (i > 0) REQUIRE(t.degree(i) >= t.degree(i - 1));
  }
}

TEST_CASE("jet product matches schoolbook multiplication", "[taylor]") {
  test::Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const BasePoint p = gen.point(n);
    const int ka = 3 + gen.below(4);
    const int kb = 3 + gen.below(4);
    const auto space = JetSpace::make(p, 7);
    const Jet a = random_jet(space, ka, gen, gen.uniform(-1, 1));
    const Jet b = random_jet(space, kb, gen, gen.uniform(-1, 1));
    const Jet c = a * b;
    REQUIRE(c.order() == std::min(ka, kb));
    const Poly expect = brute_multiply(to_poly(a), to_poly(b), c.order());
    const Poly got = to_poly(c);
    for (const auto& [e, v] : expect) REQUIRE_THAT(got.at(e), WithinAbs(v, 1e-13));

    Jet acc = a.zero_like();
    acc.add_product(a, b);
    for (const auto& [e, v] : brute_multiply(to_poly(a), to_poly(b), std::min(ka, kb)))
      REQUIRE_THAT(to_poly(acc).at(e), WithinAbs(v, 1e-13));
  }
}

TEST_CASE("Leibniz rule for extracted partials", "[taylor][property]") {
  test::Gen gen(19);
  for (int trial = 0; trial < 10; ++trial) {
    const BasePoint p = gen.point(2);
    const auto space = JetSpace::make(p, 4);
    const Jet a = random_jet(space, 4, gen, gen.uniform(-1, 1));
    const Jet b = random_jet(space, 4, gen, gen.uniform(-1, 1));
    const Jet c = a * b;
    const MonomialTable& t = c.table();
    for (int i = 0; i < t.count_upto(4); ++i) {
      const auto e = t.exponents(i);
      // sum over sub-multi-indices k <= e of prod binom(e_v, k_v) d^k a d^(e-k) b
      double sum = 0;
      std::vector<int> k(4, 0);
      while (true) {
        MultiIndex mk = MultiIndex::zero(2), mr = MultiIndex::zero(2);
        double w = 1;
        for (int v = 0; v < 4; ++v) {
          (v < 2 ? mk.alpha[v] : mk.beta[v - 2]) = k[v];
          (v < 2 ? mr.alpha[v] : mr.beta[v - 2]) = e[v] - k[v];
          for (int r = 0; r < k[v]; ++r) w *= static_cast<double>(e[v] - r) / (r + 1);
        }
        sum += w * extract_partial(a, mk) * extract_partial(b, mr);
        int v = 0;
        while (v < 4 && ++k[v] > e[v]) k[v++] = 0;
        if (v == 4) break;
      }
      MultiIndex m = MultiIndex::zero(2);
      for (int v = 0; v < 4; ++v) (v < 2 ? m.alpha[v] : m.beta[v - 2]) = e[v];
      REQUIRE_THAT(extract_partial(c, m), WithinAbs(sum, 1e-10 * (1 + std::abs(sum))));
    }
  }
}

TEST_CASE("integer polynomials are reproduced exactly", "[taylor]") {
  // F^2 = (y1 + 2 y2)^2 (1 + x1 x2)^2 at an integer base point
  const BasePoint p({1.0, 2.0}, {3.0, -1.0});
  const MetricField m = compile_metric("custom(2) { (y[1] + 2*y[2])^2 * (1 + x[1]*x[2])^2 }", {.validate = false});
  const Jet j = m.f2_jet(JetSpace::make(p, 6), 6);
  REQUIRE(j.value() == 9.0);
  REQUIRE(extract_partial(j, MultiIndex::dy(2, 0, 2)) == 18.0);
  REQUIRE(extract_partial(j, MultiIndex::dy(2, 1, 2)) == 72.0);
  REQUIRE(extract_partial(j, MultiIndex::dy(2, 0) + MultiIndex::dx(2, 0)) == 24.0);
  REQUIRE(extract_partial(j, MultiIndex::dy(2, 0, 3)) == 0.0);
  REQUIRE(extract_partial(j, MultiIndex::zero(2)) == 9.0);
}

TEST_CASE("sqrt follows the binomial series", "[taylor]") {
  const BasePoint p({0.1, 0.2}, {0.3, 0.4});
  const int K = 7;
  const auto space = JetSpace::make(p, K);
  for (double c : {0.5, 1.0, 2.5}) {
    const Jet a = Jet::constant(space, K, c) + Jet::x(space, K, 0) - 0.1;  // c + (x^1 - 0.1)
    const Jet r = sqrt(a);
    for (int k = 0; k <= K; ++k) {
      const double expect = binom_half(k) * std::pow(c, 0.5 - k);
      REQUIRE_THAT(r.coefficient(MultiIndex::dx(2, 0, k)), WithinRel(expect, 1e-12));
    }
  }
}

TEST_CASE("sqrt, reciprocal and division invert multiplication", "[taylor][property]") {
  test::Gen gen(3);
  for (int trial = 0; trial < 15; ++trial) {
    const BasePoint p = gen.point(2);
    const auto space = JetSpace::make(p, 6);
    const Jet a = random_jet(space, 6, gen, gen.uniform(1.0, 3.0));
    const Jet b = random_jet(space, 5, gen, gen.uniform(1.0, 3.0));
    const Jet s = sqrt(a);
    const Jet back = s * s;
    const Jet one = reciprocal(a) * a;
    const Jet q = (a / b) * b;
    for (std::size_t i = 0; i < back.coefficients().size(); ++i)
      REQUIRE_THAT(back.coefficients()[i], WithinAbs(a.coefficients()[i], 1e-11));
    for (std::size_t i = 0; i < one.coefficients().size(); ++i)
      REQUIRE_THAT(one.coefficients()[i], WithinAbs(i == 0 ? 1.0 : 0.0, 1e-11));
    for (std::size_t i = 0; i < q.coefficients().size(); ++i)
      REQUIRE_THAT(q.coefficients()[i], WithinAbs(a.coefficients()[i], 1e-10));
    const Jet cube = pow_int(a, 3);
    const Jet cube2 = a * a * a;
    for (std::size_t i = 0; i < cube.coefficients().size(); ++i)
      REQUIRE_THAT(cube.coefficients()[i], WithinAbs(cube2.coefficients()[i], 1e-11));
  }
}

TEST_CASE("derivative lowers the order and matches the polynomial rule", "[taylor]") {
  test::Gen gen(5);
  const BasePoint p = gen.point(2);
  const auto space = JetSpace::make(p, 6);
  const Jet a = random_jet(space, 6, gen, 0.7);
  for (int v = 0; v < 4; ++v) {
    const Jet d = a.derivative(v);
    REQUIRE(d.order() == 5);
    const Poly pa = to_poly(a);
    for (const auto& [e, c] : to_poly(d)) {
      Exps up = e;
      up[v] += 1;
      REQUIRE_THAT(c, WithinAbs(pa.at(up) * up[v], 1e-14));
    }
  }
  REQUIRE_THROWS_MATCHES(Jet::constant(space, 0, 1.0).derivative(0), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::OrderExceeded; }));
}

TEST_CASE("degenerate constant terms raise coded errors", "[taylor]") {
  const BasePoint p({0.0, 0.0}, {1.0, 0.0});
  const auto space = JetSpace::make(p, 4);
  const Jet z = Jet::x(space, 4, 0);  // vanishes at the base point
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  REQUIRE(code_of([&] { (void)reciprocal(z); }) == ErrorCode::DivisionByZeroJet);
  REQUIRE(code_of([&] { (void)sqrt(z); }) == ErrorCode::NegativeSqrtJet);
  REQUIRE(code_of([&] { (void)sqrt(z - 1.0); }) == ErrorCode::NegativeSqrtJet);
  REQUIRE(code_of([&] { (void)(z / 0.0); }) == ErrorCode::DivisionByZeroJet);
}

TEST_CASE("jets at different base points do not mix", "[taylor]") {
  const auto s1 = JetSpace::make(BasePoint({0.0, 0.0}, {1.0, 0.0}), 3);
  const auto s2 = JetSpace::make(BasePoint({0.1, 0.0}, {1.0, 0.0}), 3);
  REQUIRE_THROWS_AS(Jet::x(s1, 3, 0) + Jet::x(s2, 3, 0), Error);
}

TEST_CASE("extracted partials agree with finite differences", "[taylor][oracle]") {
  // F^2 of a non-quadratic custom metric: every mixed partial up to order 3.
  const MetricField m = test::metric("custom(2) { (y[1]^2 + y[2]^2)*(1 + 0.2*x[1]^2) + 0.3*y[1]*y[2]*x[2] + 0.1*x[1]*x[2]*y[1]^2 }");
  test::Gen gen(21);
  for (int s = 0; s < 5; ++s) {
    const BasePoint p = gen.point(2, 0.7);
    const Jet j = m.f2_jet(JetSpace::make(p, 3), 3);
    const MonomialTable& t = j.table();
    for (int i = 1; i < t.count_upto(3); ++i) {
      MultiIndex mi = MultiIndex::zero(2);
      const auto e = t.exponents(i);
      for (int v = 0; v < 2; ++v) {
        mi.alpha[v] = e[v];
        mi.beta[v] = e[v + 2];
      }
      const double ad = extract_partial(j, mi);
      const double fd = fd_oracle(m.f2_field(), p, mi, 1e-2);
      REQUIRE(std::abs(ad - fd) <= 1e-6 * std::max(1.0, std::abs(ad)));
    }
  }
}

TEST_CASE("fd oracle on simple fields", "[taylor]") {
  test::Gen gen(17);
  const ScalarField cube = [](std::span<const double>, std::span<const double> y) { return y[0] * y[0] * y[0]; };
  const ScalarField flat = [](std::span<const double>, std::span<const double>) { return 2.5; };
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(2, 1.0);
    REQUIRE_THAT(fd_oracle(cube, p, MultiIndex::dy(2, 0, 3), 1e-3), WithinAbs(6.0, 1e-6));
    REQUIRE_THAT(fd_oracle(flat, p, MultiIndex::dx(2, 1, 2), 1e-3), WithinAbs(0.0, 1e-9));
  }
  const MetricField funk = test::catalog("funk2");
  const BasePoint p({0.1, 0.0}, {1.0, 0.0});
  const MultiIndex mi = MultiIndex::dx(2, 0) + MultiIndex::dy(2, 0);
  const double ad = extract_partial(funk.f2_jet(JetSpace::make(p, 2), 2), mi);
  REQUIRE_THAT(fd_oracle(funk.f2_field(), p, mi, 1e-3), WithinRel(ad, 1e-5));
}

TEST_CASE("fd oracle rejects tiny steps and high orders", "[taylor]") {
  const BasePoint p({0.0, 0.0}, {1.0, 0.0});
  const ScalarField f = [](std::span<const double> x, std::span<const double> y) { return x[0] * y[0]; };
  REQUIRE_THROWS_AS(fd_oracle(f, p, MultiIndex::dx(2, 0), 1e-9), Error);
  REQUIRE_THROWS_AS(fd_oracle(f, p, MultiIndex::dx(2, 0, 4), 1e-3), Error);
}

TEST_CASE("euler defect detects the homogeneity degree", "[taylor][property]") {
  test::Gen gen(8);
  const MetricField m = test::catalog("funk2");
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(2, 0.8);
    const auto space = JetSpace::make(p, 3);
    const Jet f2 = m.f2_jet(space, 3);
    REQUIRE(std::abs(euler_defect(f2, 2.0)) < 1e-12 * (1 + f2.value()));
    REQUIRE(std::abs(euler_defect(sqrt(f2), 1.0)) < 1e-12);
    REQUIRE(std::abs(euler_defect(f2, 1.0)) > 1e-3 * f2.value());
  }
}

TEST_CASE("truncation keeps the low-order prefix", "[taylor]") {
  test::Gen gen(13);
  const BasePoint p = gen.point(3);
  const auto space = JetSpace::make(p, 5);
  const Jet a = random_jet(space, 5, gen, 1.0);
  const Jet b = a.truncated(2);
  REQUIRE(b.order() == 2);
  for (std::size_t i = 0; i < b.coefficients().size(); ++i) REQUIRE(b.coefficients()[i] == a.coefficients()[i]);
  REQUIRE_THROWS_AS(b.truncated(3), Error);
}
