#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "jetvar/errors.hpp"
#include "jetvar/geometry.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/numeric.hpp"
#include "jetvar/variational.hpp"

using namespace jetvar;

namespace {

CurveEvaluator curve2(std::function<JetScalar(const JetScalar&)> f0,
                      std::function<JetScalar(const JetScalar&)> f1) {
  CurveEvaluator c;
  c.dim = 2;
  c.eval = [f0 = std::move(f0), f1 = std::move(f1)](const JetScalar& t) {
    return std::vector<JetScalar>{f0(t), f1(t)};
  };
  return c;
}

std::vector<double> jet_values(const std::vector<JetScalar>& js) {
  std::vector<double> out;
  for (const auto& j : js) out.push_back(j.value());
  return out;
}

}  // namespace

TEST_CASE("flat metric has vanishing connection and curvature") {
  MetricField g = metric_euclidean(3);
  std::vector<double> x = {0.3, -1.2, 2.0};
  for (double v : christoffel(g, x)) CHECK(v == 0.0);
  CurvatureResult r = curvature(g, x);
  for (double v : r.up) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));
  for (double v : r.low) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("round sphere connection and curvature") {
  MetricField g = metric_sphere2();
  const double th = 1.1, s = std::sin(th), c = std::cos(th);
  std::vector<double> x = {th, 0.4};
  std::vector<double> G = christoffel(g, x);
  // Index [(c*2+a)*2+b].
  CHECK(G[3] == doctest::Approx(-s * c).epsilon(1e-11));  // theta, phiphi
  CHECK(G[5] == doctest::Approx(c / s).epsilon(1e-11));   // phi, theta phi
  CHECK(G[6] == doctest::Approx(c / s).epsilon(1e-11));   // phi, phi theta
  CHECK(G[0] == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(G[1] == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(G[4] == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(G[7] == doctest::Approx(0.0).epsilon(1e-11));

  CurvatureResult r = curvature(g, x);
  // R^theta_{phi theta phi} = sin^2, stored at ((0*2+1)*2+0)*2+1.
  CHECK(r.up[5] == doctest::Approx(s * s).epsilon(1e-9));
  CHECK(r.low[5] == doctest::Approx(s * s).epsilon(1e-9));
  // Sectional curvature 1: R_{0101} / det g.
  CHECK(r.low[5] / (s * s) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hyperbolic half-plane connection and curvature") {
  MetricField g = metric_hyperbolic2();
  std::vector<double> x = {0.5, 2.0};
  std::vector<double> G = christoffel(g, x);
  CHECK(G[1] == doctest::Approx(-0.5).epsilon(1e-11));  // x, xy
  CHECK(G[2] == doctest::Approx(-0.5).epsilon(1e-11));  // x, yx
  CHECK(G[4] == doctest::Approx(0.5).epsilon(1e-11));   // y, xx
  CHECK(G[7] == doctest::Approx(-0.5).epsilon(1e-11));  // y, yy
  CHECK(G[0] == doctest::Approx(0.0).epsilon(1e-11));

  CurvatureResult r = curvature(g, x);
  CHECK(r.low[5] == doctest::Approx(-1.0 / 16.0).epsilon(1e-9));
  // Constant sectional curvature -1.
  CHECK(r.low[5] * 16.0 == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(christoffel(metric_sphere2(), {0.05, 0.0}), DomainError);
  CHECK_THROWS_AS(christoffel(metric_sphere2(), {3.10, 0.0}), DomainError);
  CHECK_THROWS_AS(christoffel(metric_hyperbolic2(), {0.0, -1.0}), DomainError);
  CHECK_THROWS_AS(christoffel(metric_hyperbolic2(), {0.0, 0.0}), DomainError);

  MetricField bad;
  bad.dim = 2;
  bad.eval = [](const std::vector<JetScalar>& x) {
    std::vector<JetScalar> out(4, JetScalar(x[0].shape()));
    out[0] = JetScalar::constant(x[0].shape(), -1.0);
    out[3] = JetScalar::constant(x[0].shape(), 1.0);
    return out;
  };
  std::vector<JetScalar> pt = {JetScalar(0.0), JetScalar(0.0)};
  CHECK_THROWS_AS(metric_components(bad, pt), DomainError);
}

TEST_CASE("one-dimensional conformal factor") {
  MetricField g;
  g.dim = 1;
  g.eval = [](const std::vector<JetScalar>& x) {
    return std::vector<JetScalar>{jet_exp(2.0 * x[0])};
  };
  std::vector<double> G = christoffel(g, {0.7});
  CHECK(G[0] == doctest::Approx(1.0).epsilon(1e-11));  // (1/2) g^{-1} g' = u'
}

TEST_CASE("covariant derivative along curves") {
  MetricField e = metric_euclidean(2);
  CurveEvaluator gamma = curve2([](const JetScalar& t) { return 0.3 * t; },
                                [](const JetScalar& t) { return 1.0 + 0.0 * t; });
  CurveEvaluator V = curve2([](const JetScalar& t) { return t * t; },
                            [](const JetScalar& t) { return t; });
  std::vector<double> d1 = covariant_derivative_along(e, gamma, V, 0.7, 1);
  CHECK(d1[0] == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(d1[1] == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> d2 = covariant_derivative_along(e, gamma, V, 0.7, 2);
  CHECK(d2[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d2[1] == doctest::Approx(0.0).epsilon(1e-12));

  // Meridians and the equator of the sphere are geodesics.
  MetricField s = metric_sphere2();
  CurveEvaluator meridian = curve2([](const JetScalar& t) { return 0.4 + t; },
                                   [](const JetScalar& t) { return 0.3 + 0.0 * t; });
  CurveEvaluator mdot = curve2([](const JetScalar& t) { return 1.0 + 0.0 * t; },
                               [](const JetScalar& t) { return 0.0 * t; });
  for (double v : covariant_derivative_along(s, meridian, mdot, 0.5, 1))
    CHECK(v == doctest::Approx(0.0).epsilon(1e-11));

  const double half_pi = 1.57079632679489662;
  CurveEvaluator equator = curve2([half_pi](const JetScalar& t) { return half_pi + 0.0 * t; },
                                  [](const JetScalar& t) { return 2.0 * t; });
  CurveEvaluator edot = curve2([](const JetScalar& t) { return 0.0 * t; },
                               [](const JetScalar& t) { return 2.0 + 0.0 * t; });
  for (double v : covariant_derivative_along(s, equator, edot, 0.2, 1))
    CHECK(v == doctest::Approx(0.0).epsilon(1e-11));

  // A latitude circle is not a geodesic: D_t gammadot = (-sin th cos th, 0).
  CurveEvaluator lat = curve2([](const JetScalar& t) { return 1.0 + 0.0 * t; },
                              [](const JetScalar& t) { return t; });
  CurveEvaluator ldot = curve2([](const JetScalar& t) { return 0.0 * t; },
                               [](const JetScalar& t) { return 1.0 + 0.0 * t; });
  std::vector<double> acc = covariant_derivative_along(s, lat, ldot, 0.9, 1);
  CHECK(acc[0] == doctest::Approx(-std::sin(1.0) * std::cos(1.0)).epsilon(1e-10));
  CHECK(acc[1] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("curvature operator antisymmetry and Bianchi identity") {
  MetricField s = metric_sphere2();
  CurvatureResult r = curvature(s, {1.2, 0.8});
  SplitMix64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> X = {rng.symmetric(), rng.symmetric()};
    std::vector<double> Y = {rng.symmetric(), rng.symmetric()};
    std::vector<double> Z = {rng.symmetric(), rng.symmetric()};
    std::vector<double> a = curvature_apply(r, X, Y, Z);
    std::vector<double> b = curvature_apply(r, Y, X, Z);
    std::vector<double> c1 = curvature_apply(r, Y, Z, X);
    std::vector<double> c2 = curvature_apply(r, Z, X, Y);
    for (int d = 0; d < 2; ++d) {
      CHECK(a[d] + b[d] == doctest::Approx(0.0).epsilon(1e-9));
      CHECK(a[d] + c1[d] + c2[d] == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("squared covariant acceleration Lagrangian") {
  MetricField e = metric_euclidean(2);
  Lagrangian L = cubic_lagrangian(e);
  CHECK(L.k == 2);
  std::vector<JetScalar> xs;
  for (double v : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) xs.emplace_back(v);
  CHECK(L.eval(xs).value() == doctest::Approx(0.3 * 0.3 + 0.6 * 0.6).epsilon(1e-13));

  // On the sphere the value is g(D_t gammadot, D_t gammadot) along any curve.
  MetricField s = metric_sphere2();
  Lagrangian Ls = cubic_lagrangian(s);
  CurveEvaluator gamma = curve2([](const JetScalar& t) { return 1.0 + 0.3 * t; },
                                [](const JetScalar& t) { return 0.5 * t + 0.2 * (t * t); });
  const double t0 = 0.4;
  HigherVelocity v2 = curve_jet(gamma, t0, 2);
  std::vector<JetScalar> args;
  for (int a = 0; a < 2; ++a)
    for (int m = 0; m <= 2; ++m) args.emplace_back(v2.coords[a].coeff(m));
  CurveEvaluator gdot = curve2([](const JetScalar& t) { return 0.3 + 0.0 * t; },
                               [](const JetScalar& t) { return 0.5 + 0.4 * t; });
  std::vector<double> D = covariant_derivative_along(s, gamma, gdot, t0, 1);
  std::vector<JetScalar> pt = {JetScalar(1.0 + 0.3 * t0),
                               JetScalar(0.5 * t0 + 0.2 * t0 * t0)};
  std::vector<double> gv = jet_values(metric_components(s, pt));
  double want = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) want += gv[static_cast<std::size_t>(a * 2 + b)] * D[a] * D[b];
  CHECK(Ls.eval(args).value() == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("fourth-derivative equation in flat space") {
  MetricField e = metric_euclidean(1);
  CurveEvaluator cubic;
  cubic.dim = 1;
  cubic.eval = [](const JetScalar& t) {
    return std::vector<JetScalar>{jet_powi(t, 3) + 2.0 * t};
  };
  for (double t : {0.2, 0.8})
    CHECK(cubic_el_residual(e, cubic, t)[0] == doctest::Approx(0.0).epsilon(1e-12));

  CurveEvaluator quart;
  quart.dim = 1;
  quart.eval = [](const JetScalar& t) { return std::vector<JetScalar>{jet_powi(t, 4)}; };
  CHECK(cubic_el_residual(e, quart, 0.3)[0] == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("variational force matches the intrinsic cubic equation") {
  MetricField s = metric_sphere2();
  Lagrangian L = cubic_lagrangian(s);
  CurveEvaluator gamma = curve2(
      [](const JetScalar& t) { return 1.2 + 0.3 * t - 0.1 * (t * t) + 0.05 * jet_powi(t, 3); },
      [](const JetScalar& t) { return 0.4 * t + 0.2 * (t * t) - 0.08 * jet_powi(t, 4); });
  const double t0 = 0.15;
  ForceValue f = force_along(L, gamma, t0);
  std::vector<double> resid = cubic_el_residual(s, gamma, t0);
  std::vector<JetScalar> pt = {JetScalar(f.x[0]), JetScalar(f.x[1])};
  std::vector<double> gv = jet_values(metric_components(s, pt));
  const double det = gv[0] * gv[3] - gv[1] * gv[2];
  // (1/2) g^{-1} F, written out for a 2x2 metric.
  const double r0 = 0.5 * (gv[3] * f.f[0] - gv[1] * f.f[1]) / det;
  const double r1 = 0.5 * (gv[0] * f.f[1] - gv[2] * f.f[0]) / det;
  CHECK(r0 == doctest::Approx(resid[0]).epsilon(1e-9));
  CHECK(r1 == doctest::Approx(resid[1]).epsilon(1e-9));
}
