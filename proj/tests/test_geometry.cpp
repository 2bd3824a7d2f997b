#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "fcl/geometry/covariant.hpp"
#include "fcl/geometry/metric_fields.hpp"
#include "support.hpp"

using namespace fcl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// The perturbed Riemannian catalog metric, written out by hand.
Eigen::Matrix3d riemannian3_matrix(const std::array<double, 3>& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  Eigen::Matrix3d a;
  a << 1 + 0.3 * x1 * x1 + 0.1 * x2, 0.1 * x1 * x3, 0.05 * x2,  //
      0.1 * x1 * x3, 1.2 + 0.2 * x3 * x3 - 0.1 * x1, 0.1 * x1 * x2,  //
      0.05 * x2, 0.1 * x1 * x2, 0.9 + 0.2 * x2 * x2;
  return a;
}

// Levi-Civita symbols Gamma^i_jk from centered differences of a(x).
std::array<double, 27> christoffel_fd(const std::array<double, 3>& x) {
  const double h = 1e-4;
  std::array<Eigen::Matrix3d, 3> da;
  for (int k = 0; k < 3; ++k) {
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    da[k] = (riemannian3_matrix(xp) - riemannian3_matrix(xm)) / (2 * h);
  }
  const Eigen::Matrix3d inv = riemannian3_matrix(x).inverse();
  std::array<double, 27> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double s = 0;
        for (int l = 0; l < 3; ++l) s += inv(i, l) * (da[j](l, k) + da[k](l, j) - da[l](j, k));
        g[9 * i + 3 * j + k] = 0.5 * s;
      }
  return g;
}

std::array<double, 3> arr3(std::span<const double> v) { return {v[0], v[1], v[2]}; }

}  // namespace

TEST_CASE("Riemannian metrics have g = a and no Cartan torsion", "[geometry]") {
  const MetricField m = test::catalog("riemannian3");
  test::Gen gen(1);
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(3);
    const FundamentalTensor ft = fundamental_tensor(m, p);
    const Eigen::Matrix3d a = riemannian3_matrix(arr3(p.x()));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        REQUIRE_THAT(ft.g(i, j), WithinAbs(a(i, j), 1e-13));
        double id = 0;
        for (int k = 0; k < 3; ++k) id += ft.g(i, k) * ft.g_inv(k, j);
        REQUIRE_THAT(id, WithinAbs(i == j ? 1.0 : 0.0, 1e-13));
      }
    REQUIRE(max_abs(cartan(m, p).C) < 1e-13);
  }
}

TEST_CASE("Berwald connection of a Riemannian metric is Levi-Civita", "[geometry][oracle]") {
  const MetricField m = test::catalog("riemannian3");
  test::Gen gen(2);
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(3);
    const auto oracle = christoffel_fd(arr3(p.x()));
    const Connections c = connections(m, p);
    const TensorValue G = spray(m, p);
    for (int i = 0; i < 3; ++i) {
      double gi = 0;
      for (int j = 0; j < 3; ++j) {
        double nij = 0;
        for (int k = 0; k < 3; ++k) {
          REQUIRE_THAT(c.gamma(i, j, k), WithinAbs(oracle[9 * i + 3 * j + k], 1e-8));
          nij += oracle[9 * i + 3 * j + k] * p.y()[k];
          gi += 0.5 * oracle[9 * i + 3 * j + k] * p.y()[j] * p.y()[k];
        }
        REQUIRE_THAT(c.N(i, j), WithinAbs(nij, 1e-8));
      }
      REQUIRE_THAT(G(i), WithinAbs(gi, 1e-8));
    }
  }
}

TEST_CASE("conformally flat sphere has the closed-form symbols", "[geometry][oracle]") {
  const MetricField m = test::catalog("sphere2");
  test::Gen gen(3);
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(2, 1.5);
    const double x0 = p.x()[0], x1 = p.x()[1];
    // g = e^{2 phi} delta, phi = log(2 / (1 + |x|^2))
    const double q = 1 + x0 * x0 + x1 * x1;
    const double dphi[2] = {-2 * x0 / q, -2 * x1 / q};
    const Connections c = connections(m, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const double expect = (i == j) * dphi[k] + (i == k) * dphi[j] - (j == k) * dphi[i];
          REQUIRE_THAT(c.gamma(i, j, k), WithinAbs(expect, 1e-12));
        }
  }
}

TEST_CASE("Funk spray is F y / 2", "[geometry][oracle]") {
  for (const char* name : {"funk2", "funk3"}) {
    const MetricField m = test::catalog(name);
    test::Gen gen(4);
    for (int s = 0; s < 20; ++s) {
      const BasePoint p = gen.point(m.dim(), 0.9);
      const double F = m.F(p.x(), p.y());
      const TensorValue G = spray(m, p);
      for (int i = 0; i < m.dim(); ++i) REQUIRE_THAT(G(i), WithinAbs(0.5 * F * p.y()[i], 1e-12 * (1 + F)));
    }
  }
}

TEST_CASE("zeroth-layer identities hold on Finsler metrics", "[geometry][property]") {
  for (const char* name : {"funk2", "funk3", "randers2", "randers3"}) {
    INFO(name);
    const MetricField m = test::catalog(name);
    const int n = m.dim();
    test::Gen gen(5);
    for (int s = 0; s < 15; ++s) {
      const BasePoint p = gen.point(n, 0.8);
      LocalGeometry geo(m, p, 5);
      const Tensor<double> g = values(geo.g()), gi = values(geo.g_inv()), C = values(geo.cartan()),
                           h = values(geo.angular()), hm = values(geo.angular_mixed()), G = values(geo.spray()),
                           N = values(geo.nonlinear_connection()), Gam = values(geo.berwald_connection()),
                           yl = values(geo.y_low());
      const double F = geo.F().value();
      const auto y = p.y();
      double yy = 0, trace = 0;
      for (int i = 0; i < n; ++i) {
        trace += hm(i, i);
        double Ny = 0, hy = 0;
        for (int j = 0; j < n; ++j) {
          yy += gi(i, j) * yl(i) * yl(j);
          REQUIRE_THAT(g(i, j), WithinAbs(g(j, i), 1e-13));
          Ny += N(i, j) * y[j];
          hy += h(i, j) * y[j];
          for (int k = 0; k < n; ++k) {
            REQUIRE_THAT(C(i, j, k), WithinAbs(C(j, i, k), 1e-12));
            REQUIRE_THAT(C(i, j, k), WithinAbs(C(i, k, j), 1e-12));
            REQUIRE_THAT(Gam(i, j, k), WithinAbs(Gam(i, k, j), 1e-12));
          }
          double Cy = 0;
          for (int k = 0; k < n; ++k) Cy += C(i, j, k) * y[k];
          REQUIRE(std::abs(Cy) < 1e-12);
        }
        REQUIRE_THAT(Ny, WithinAbs(2 * G(i), 1e-12));
        REQUIRE(std::abs(hy) < 1e-12);
      }
      REQUIRE_THAT(yy, WithinRel(F * F, 1e-12));
      REQUIRE_THAT(trace, WithinAbs(n - 1.0, 1e-12));

      // y_i = 1/2 dF^2/dy^i by finite differences
      for (int i = 0; i < n; ++i) {
        std::vector<double> yp(y.begin(), y.end()), ym = yp;
        yp[i] += 1e-5;
        ym[i] -= 1e-5;
        const double d = (m.f2(p.x(), yp) - m.f2(p.x(), ym)) / 4e-5;
        REQUIRE_THAT(yl(i), WithinAbs(d, 1e-8));
      }
    }
  }
}

TEST_CASE("homogeneity of the zeroth layer under y -> t y", "[geometry][property]") {
  const MetricField m = test::catalog("randers3");
  test::Gen gen(6);
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(3);
    const double t = gen.uniform(0.3, 3.0);
    const BasePoint q = p.scaled_y(t);
    const TensorValue G1 = spray(m, p), G2 = spray(m, q);
    const Connections c1 = connections(m, p), c2 = connections(m, q);
    const CartanTorsion k1 = cartan(m, p), k2 = cartan(m, q);
    REQUIRE(test::max_abs_diff(G1 * (t * t), G2) < 1e-12);
    REQUIRE(test::max_abs_diff(c1.N * t, c2.N) < 1e-12);
    REQUIRE(test::max_abs_diff(c1.gamma, c2.gamma) < 1e-11);
    REQUIRE(test::max_abs_diff(k1.C * (1 / t), k2.C) < 1e-11);
    REQUIRE(test::max_abs_diff(fundamental_tensor(m, p).g, fundamental_tensor(m, q).g) < 1e-12);
  }
}

TEST_CASE("metric compatibility of the Berwald connection", "[covariant][property]") {
  test::Gen gen(7);
  {
    const MetricField m = test::catalog("riemannian3");
    for (int s = 0; s < 5; ++s) {
      LocalGeometry geo(m, gen.point(3), 5);
      REQUIRE(max_abs(values(h_derivative(geo, geo.g()))) < 1e-12);
    }
  }
  for (const char* name : {"funk3", "randers3"}) {
    const MetricField m = test::catalog(name);
    for (int s = 0; s < 5; ++s) {
      LocalGeometry geo(m, gen.point(3), 6);
      // F and y are parallel for every Finsler metric
      REQUIRE(max_abs(values(h_derivative(geo, scalar_tensor(geo.f2())))) < 1e-12);
      REQUIRE(max_abs(values(h_derivative(geo, geo.y_up()))) < 1e-12);
      // g_ij|k = -2 L_ijk with L_ijk = C_ijk|s y^s
      const JetTensor gh = h_derivative(geo, geo.g());
      const Tensor<double> L = values(geodesic_contraction(geo, geo.cartan()));
      REQUIRE(test::max_abs_diff(values(gh), L * -2.0) < 1e-11);
      REQUIRE(max_abs(values(contract_y(geo, gh, 2))) < 1e-11);
      // v-derivative of g is 2C
      REQUIRE(test::max_abs_diff(values(v_derivative(geo.g())), values(geo.cartan()) * 2.0) < 1e-12);
    }
  }
}

TEST_CASE("horizontal derivative of a covector field matches Levi-Civita", "[covariant][oracle]") {
  const MetricField m = test::catalog("riemannian3");
  test::Gen gen(8);
  for (int s = 0; s < 10; ++s) {
    const BasePoint p = gen.point(3);
    LocalGeometry geo(m, p, 5);
    const int K = geo.order();
    auto X = [&](int i) { return Jet::x(geo.space(), K, i); };
    // w = (x2, x1 x3, 1 + x1^2)
    const JetTensor w(3, slots("l"), std::vector<Jet>{X(1), X(0) * X(2), 1.0 + X(0) * X(0)});
    const Tensor<double> got = values(h_derivative(geo, w));

    const auto x = p.x();
    const double wv[3] = {x[1], x[0] * x[2], 1 + x[0] * x[0]};
    const double dw[3][3] = {{0, 1, 0}, {x[2], 0, x[0]}, {2 * x[0], 0, 0}};  // dw_i/dx^l
    const auto gam = christoffel_fd(arr3(x));
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l) {
        double expect = dw[i][l];
        for (int mm = 0; mm < 3; ++mm) expect -= gam[9 * mm + 3 * i + l] * wv[mm];
        REQUIRE_THAT(got(i, l), WithinAbs(expect, 1e-8));
      }
  }
}

TEST_CASE("geodesic contraction two ways agree", "[covariant][property]") {
  for (const char* name : {"funk3", "randers3", "randers2"}) {
    const MetricField m = test::catalog(name);
    test::Gen gen(9);
    for (int s = 0; s < 10; ++s) {
      LocalGeometry geo(m, gen.point(m.dim()), 6);
      const JetTensor a = geodesic_contraction(geo, geo.cartan());
      const JetTensor b = flow_derivative(geo, geo.cartan());
      REQUIRE(scaled_residual(values(a), values(b)) < 1e-12);
      const JetTensor c = geodesic_contraction(geo, geo.spray());
      const JetTensor d = flow_derivative(geo, geo.spray());
      REQUIRE(scaled_residual(values(c), values(d)) < 1e-12);
    }
  }
}

TEST_CASE("point wrappers respect the jet order", "[covariant]") {
  const MetricField m = test::catalog("funk2");
  const BasePoint p({0.1, 0.2}, {0.5, -0.3});
  const TensorField C{[](LocalGeometry& geo) { return geo.cartan(); }, min_order::cartan};
  const TensorValue a = h_derivative(m, C, p, 6);
  LocalGeometry geo(m, p, 6);
  REQUIRE(test::max_abs_diff(a, values(h_derivative(geo, geo.cartan()))) == 0.0);
  REQUIRE_THROWS_AS(h_derivative(m, C, p, 3), Error);
  REQUIRE(v_derivative(m, C, p, 4).rank() == 4);
}

TEST_CASE("ill-conditioned fundamental tensors are rejected", "[geometry]") {
  const MetricField m = compile_metric("riemannian(2) { 1, 0; 0, 1e-14 }", {.validate = false});
  REQUIRE_THROWS_MATCHES(fundamental_tensor(m, BasePoint({0, 0}, {1, 0})), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::SingularMetric; }));
}
