#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <vector>

#include "jetvar/bundles.hpp"
#include "jetvar/canonical.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/numeric.hpp"
#include "jetvar/variational.hpp"

using namespace jetvar;

namespace {

CurveEvaluator curve1(std::function<JetScalar(const JetScalar&)> f) {
  CurveEvaluator c;
  c.dim = 1;
  c.eval = [f = std::move(f)](const JetScalar& t) { return std::vector<JetScalar>{f(t)}; };
  return c;
}

Lagrangian half_accel_squared() {
  Lagrangian L;
  L.dim = 1;
  L.k = 2;
  L.eval = [](const std::vector<JetScalar>& xs) { return 0.5 * (xs[2] * xs[2]); };
  return L;
}

// Order-2 polynomial Lagrangian in one coordinate with mixed terms, used to
// cross-check the two force/momentum code paths on a nontrivial example.
Lagrangian mixed_poly() {
  Lagrangian L;
  L.dim = 1;
  L.k = 2;
  L.eval = [](const std::vector<JetScalar>& xs) {
    return xs[2] * xs[2] + 0.3 * (xs[0] * xs[1] * xs[2]) - 0.7 * (xs[1] * xs[1]);
  };
  return L;
}

}  // namespace

TEST_CASE("preset Lagrangians evaluate classically") {
  std::vector<JetScalar> fp = {JetScalar(1.0), JetScalar(3.0), JetScalar(2.0), JetScalar(4.0)};
  CHECK(lagrangian_free_particle(2).eval(fp).value() == doctest::Approx(12.5));
  CHECK(lagrangian_harmonic(2).eval(fp).value() == doctest::Approx(10.0));
  std::vector<JetScalar> ac = {JetScalar(1.0), JetScalar(2.0), JetScalar(3.0)};
  CHECK(lagrangian_accel_squared(1).eval(ac).value() == doctest::Approx(9.0));
  CHECK(lagrangian_accel_squared(1).k == 2);
}

TEST_CASE("fiber derivative of the harmonic Lagrangian") {
  Lagrangian L = lagrangian_harmonic(1);
  HigherVelocity v;
  v.dim = 1;
  v.coords = {JetScalar(JetShape({1}), {2, 3})};
  CotangentLift dl = differential_dL(L, v);
  CHECK(dl.p[0] == doctest::Approx(-2.0));  // dL/dx
  CHECK(dl.p[1] == doctest::Approx(3.0));   // dL/dxdot
  CovectorVelocity lam = lambda_full(L, v);
  CovectorVelocity eps = dual_eps(dl);
  for (int i = 0; i < 2; ++i) CHECK(lam.p[i] == doctest::Approx(eps.p[i]).epsilon(1e-14));
  CovectorVelocity red = lambda_reduced(L, v);
  CHECK(red.k == 0);
  CHECK(red.p.size() == 1);
  CHECK(red.p[0] == doctest::Approx(lam.p[0]).epsilon(1e-14));
}

TEST_CASE("force covector on closed-form curves") {
  Lagrangian L = lagrangian_accel_squared(1);
  CurveEvaluator quart = curve1([](const JetScalar& t) { return jet_powi(t, 4); });
  ForceValue f = force_along(L, quart, 0.5);
  CHECK(f.x[0] == doctest::Approx(0.0625));
  CHECK(f.f[0] == doctest::Approx(48.0).epsilon(1e-12));  // 2 x'''' of t^4

  Lagrangian H = lagrangian_harmonic(1);
  CurveEvaluator sine = curve1([](const JetScalar& t) { return jet_sin(t); });
  for (double t : {0.0, 0.4, 1.3, 2.9})
    CHECK(force_along(H, sine, t).f[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("force with jet-valued time propagates derivatives") {
  Lagrangian H = lagrangian_harmonic(1);
  CurveEvaluator cubic = curve1([](const JetScalar& t) { return jet_powi(t, 3); });
  // F(t) = -(6t + t^3) for L = (xdot^2 - x^2)/2 along x = t^3.
  ForceJet fj = force_jet(H, cubic, seed_variable(JetShape({2}), 0.5));
  CHECK(fj.f[0].coeff(0) == doctest::Approx(-3.125).epsilon(1e-13));
  CHECK(fj.f[0].coeff(1) == doctest::Approx(-6.75).epsilon(1e-13));
  CHECK(fj.f[0].coeff(2) == doctest::Approx(-3.0).epsilon(1e-13));
}

TEST_CASE("geometric force equals the alternating-derivative formula") {
  Lagrangian L = mixed_poly();
  CurveEvaluator c = curve1([](const JetScalar& t) {
    return jet_sin(t) + 0.5 * jet_powi(t, 2);
  });
  for (double t : {0.1, 0.8, 1.7}) {
    ForceValue f = force_along(L, c, t);
    std::vector<double> o = force_local_oracle(L, c, t);
    CHECK(f.f[0] == doctest::Approx(o[0]).epsilon(1e-10));
  }
}

TEST_CASE("boundary momentum on closed-form curves") {
  Lagrangian L = half_accel_squared();
  CurveEvaluator cubic = curve1([](const JetScalar& t) { return jet_powi(t, 3); });
  CovectorVelocity m = momentum_along(L, cubic, 1.0);
  CHECK(m.k == 1);
  CHECK(m.p[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(m.p[1] == doctest::Approx(-6.0).epsilon(1e-12));

  Lagrangian P = mixed_poly();
  for (double t : {0.2, 0.9}) {
    CovectorVelocity a = momentum_along(P, cubic, t);
    CovectorVelocity b = momentum_local_oracle(P, cubic, t);
    for (std::size_t i = 0; i < a.p.size(); ++i)
      CHECK(a.p[i] == doctest::Approx(b.p[i]).epsilon(1e-10));
  }
}

TEST_CASE("boundary pairing against a variation") {
  Lagrangian H = lagrangian_harmonic(1);
  VariationField var;
  var.curve = curve1([](const JetScalar& t) { return jet_sin(t); });
  var.delta = curve1([](const JetScalar& t) { return t * t; });
  // <M, delta> = xdot * delta = cos(t) t^2.
  CHECK(boundary_pairing(H, var, 0.7) ==
        doctest::Approx(std::cos(0.7) * 0.49).epsilon(1e-13));
}

TEST_CASE("pointwise variation splits into force plus boundary rate") {
  Lagrangian H = lagrangian_harmonic(1);
  VariationField var;
  var.curve = curve1([](const JetScalar& t) { return jet_sin(t); });
  var.delta = curve1([](const JetScalar& t) { return t * t; });
  for (double t : {0.15, 0.6, 1.1}) {
    PointwiseVariation pv = variation_pointwise(H, var, t);
    CHECK(pv.dl_pairing ==
          doctest::Approx(pv.force_pairing + pv.boundary_rate).epsilon(1e-11));
  }

  Lagrangian L2 = half_accel_squared();
  VariationField var2;
  var2.curve = curve1([](const JetScalar& t) { return jet_powi(t, 3) + t; });
  var2.delta = curve1([](const JetScalar& t) { return jet_sin(t); });
  for (double t : {0.3, 0.9}) {
    PointwiseVariation pv = variation_pointwise(L2, var2, t);
    CHECK(pv.dl_pairing ==
          doctest::Approx(pv.force_pairing + pv.boundary_rate).epsilon(1e-11));
  }
}

TEST_CASE("action variation matches the closed form") {
  Lagrangian H = lagrangian_harmonic(1);
  VariationField var;
  var.curve = curve1([](const JetScalar& t) { return jet_sin(t); });
  var.delta = curve1([](const JetScalar& t) { return t * t; });
  ActionVariationReport r = action_variation(H, var, 0.0, 0.8);
  CHECK(r.converged);
  // integral of (cos * 2t - sin * t^2) over [0, 0.8] = 0.64 cos(0.8).
  CHECK(r.lhs == doctest::Approx(0.64 * std::cos(0.8)).epsilon(1e-10));
  CHECK(r.abs_diff <= 1e-9);
  CHECK(r.rhs == doctest::Approx(r.force_integral + r.boundary_end - r.boundary_start)
                     .epsilon(1e-14));
}

TEST_CASE("transversality against boundary variation spans") {
  Lagrangian H = lagrangian_harmonic(1);
  // Solution with xdot(1) = 0: cos t + tan(1) sin t.
  CurveEvaluator nat = curve1([](const JetScalar& t) {
    return jet_cos(t) + std::tan(1.0) * jet_sin(t);
  });
  CHECK(transversality_check(H, nat, 0.0, 1.0, boundary_free_end(1, 1)).ok);
  CHECK(transversality_check(H, nat, 0.0, 1.0, boundary_fixed()).ok);

  CurveEvaluator sine = curve1([](const JetScalar& t) { return jet_sin(t); });
  CHECK(!transversality_check(H, sine, 0.0, 1.0, boundary_free_end(1, 1)).ok);
  CHECK(transversality_check(H, sine, 0.0, 1.0, boundary_fixed()).ok);

  const double period = 2.0 * 3.14159265358979323846;
  CHECK(transversality_check(H, sine, 0.0, period, boundary_periodic(1, 1), 1e-9).ok);
}

TEST_CASE("forced equation residual vanishes on matched forcing") {
  Lagrangian H = lagrangian_harmonic(1);
  const double c = 0.1;
  const double w = std::sqrt(1.0 - c * c / 4.0);
  CurveEvaluator gamma = curve1([c, w](const JetScalar& t) {
    return jet_exp(0.5 * c * t) * jet_cos(w * t);
  });
  auto gdot = [c, w](double t) {
    return std::exp(0.5 * c * t) * (0.5 * c * std::cos(w * t) - w * std::sin(w * t));
  };
  auto f_ext = [&](double t) { return std::vector<double>{-c * gdot(t)}; };
  for (double t : {0.0, 0.5, 1.4})
    CHECK(forced_el_residual(H, gamma, t, f_ext)[0] == doctest::Approx(0.0).epsilon(1e-11));

  CurveEvaluator sine = curve1([](const JetScalar& t) { return jet_sin(t); });
  auto zero = [](double) { return std::vector<double>{0.0}; };
  CHECK(forced_el_residual(H, sine, 0.9, zero)[0] == doctest::Approx(0.0).epsilon(1e-12));
}
