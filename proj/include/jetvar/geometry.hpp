#pragma once

#include <functional>
#include <vector>

#include "jetvar/bundles.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

/// Riemannian metric given by a jet-capable component evaluator.  The raw
/// evaluator returns dim*dim components row-major; consumers go through
/// metric_components, which symmetrizes and checks positive definiteness.
struct MetricField {
  int dim = 0;
  std::function<std::vector<JetScalar>(const std::vector<JetScalar>&)> eval;
};

MetricField metric_euclidean(int dim);
/// Round unit sphere in polar coordinates (theta, phi), g = diag(1, sin^2 theta).
/// Evaluation within 0.1 rad of either pole is a domain error.
MetricField metric_sphere2();
/// Hyperbolic upper half-plane (x, y), y > 0, g = diag(1, 1) / y^2.
MetricField metric_hyperbolic2();

/// Symmetrized components g_{ab} at x, row-major.  Checks that the value
/// matrix is positive definite (all leading principal minors positive).
std::vector<JetScalar> metric_components(const MetricField& g,
                                         const std::vector<JetScalar>& x);

/// Christoffel symbols of the Levi-Civita connection,
/// Gamma^c_{ab} = (1/2) g^{cd} (d_a g_{db} + d_b g_{da} - d_d g_{ab}),
/// indexed [(c*dim + a)*dim + b].  Partial derivatives are taken by jet
/// seeding, so x may carry arbitrary jet structure.
std::vector<JetScalar> christoffel_jets(const MetricField& g,
                                        const std::vector<JetScalar>& x);
std::vector<double> christoffel(const MetricField& g, const std::vector<double>& x);

/// Riemann tensor at a point.  up holds R^d_{cab} = (R(e_a, e_b) e_c)^d at
/// [((d*dim + c)*dim + a)*dim + b]; low holds R_{abcd} = g_{ae} R^e_{bcd} in
/// the same index order.  Construction checks the pair symmetry
/// R_{abcd} = R_{cdab}.
struct CurvatureResult {
  int dim = 0;
  std::vector<double> up;
  std::vector<double> low;
};

CurvatureResult curvature(const MetricField& g, const std::vector<double>& x);

/// (R(X, Y) Z)^d from the up-index tensor.
std::vector<double> curvature_apply(const CurvatureResult& r, const std::vector<double>& x_vec,
                                    const std::vector<double>& y_vec,
                                    const std::vector<double>& z_vec);

/// m-fold covariant derivative of the field V along gamma at time t,
/// (D_t V)^c = Vdot^c + Gamma^c_{ab} gammadot^a V^b applied m times.
std::vector<double> covariant_derivative_along(const MetricField& g,
                                               const CurveEvaluator& gamma,
                                               const CurveEvaluator& v_field, double t,
                                               int m);

/// One covariant-derivative fold applied m times to jets in a single slot:
/// gamma_jets and w both of order m in slot 0.  Returns the values after all
/// folds.
std::vector<double> covariant_fold(const MetricField& g,
                                   const std::vector<JetScalar>& gamma_jets,
                                   const std::vector<JetScalar>& w);

/// Squared covariant acceleration g(D_t gammadot, D_t gammadot) as an
/// order-2 Lagrangian.
Lagrangian cubic_lagrangian(const MetricField& g);

/// D_t^3 gammadot + R(D_t gammadot, gammadot) gammadot at time t.
std::vector<double> cubic_el_residual(const MetricField& g, const CurveEvaluator& gamma,
                                      double t);

}  // namespace jetvar
