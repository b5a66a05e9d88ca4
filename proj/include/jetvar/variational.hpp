#pragma once

#include <functional>
#include <vector>

#include "jetvar/canonical.hpp"

namespace jetvar {

/// Order-k Lagrangian in a chart.  The evaluator receives the velocity
/// coordinates x^{a,(alpha)} flattened as [a*(k+1)+alpha], all sharing one
/// truncation shape, and must be built from ring operations so that
/// jet-valued arguments propagate exactly.
struct Lagrangian {
  int dim = 0;
  int k = 1;
  std::function<JetScalar(const std::vector<JetScalar>&)> eval;
};

Lagrangian lagrangian_free_particle(int dim);
Lagrangian lagrangian_harmonic(int dim);
Lagrangian lagrangian_accel_squared(int dim);

/// Variation along a curve: tangent components delta(t) over curve(t).
struct VariationField {
  CurveEvaluator curve;
  CurveEvaluator delta;
};

/// Fiber derivative of the Lagrangian at an order-k velocity: the classical
/// momenta p_(alpha) = dL/dx^{a,(alpha)}, computed by seeding each argument
/// with a fresh first-order generator.
CotangentLift differential_dL(const Lagrangian& L, const HigherVelocity& v);

/// Degree-normalized form of the fiber derivative (full order k).
CovectorVelocity lambda_full(const Lagrangian& L, const HigherVelocity& v);

/// Truncation of lambda_full to order k-1 (drops the top momentum level).
CovectorVelocity lambda_reduced(const Lagrangian& L, const HigherVelocity& v);

struct ForceValue {
  std::vector<double> x;  // base point
  std::vector<double> f;  // covector components
};

struct ForceJet {
  std::vector<JetScalar> x;
  std::vector<JetScalar> f;
};

/// Euler-Lagrange force covector along a curve: the order-k prolongation of
/// the normalized fiber derivative is assembled as a semi-holonomic element
/// over the cotangent fibration and contracted through `upsilon`.  Needs the
/// curve's derivatives up to order 2k; t may carry any truncation shape and
/// the result components carry the same shape.
ForceJet force_jet(const Lagrangian& L, const CurveEvaluator& curve, const JetScalar& t);
ForceValue force_along(const Lagrangian& L, const CurveEvaluator& curve, double t);

/// Classical alternating-derivative evaluation of the same covector,
///   F_a = sum_alpha (-1)^alpha d^alpha/dt^alpha dL/dx^{a,(alpha)},
/// computed on its own code path for cross-checking.
std::vector<double> force_local_oracle(const Lagrangian& L, const CurveEvaluator& curve,
                                       double t);

/// Boundary momentum along a curve: the order-(k-1) prolongation of the
/// reduced fiber derivative pushed through the boundary-momentum morphism.
/// Needs derivatives up to order 2k-1.
TruncatedLift<JetScalar> momentum_jet(const Lagrangian& L, const CurveEvaluator& curve,
                                      const JetScalar& t);
CovectorVelocity momentum_along(const Lagrangian& L, const CurveEvaluator& curve, double t);

/// Classical iterated-by-parts momenta
///   p_(alpha) = sum_beta (-1)^beta d^beta/dt^beta dL/dx^{a,(alpha+beta+1)},
/// returned in the same degree-normalized storage as momentum_along.
CovectorVelocity momentum_local_oracle(const Lagrangian& L, const CurveEvaluator& curve,
                                       double t);

/// <M(t), j^{k-1} delta(t)> via the order-(k-1) velocity pairing.
JetScalar boundary_pairing_jet(const Lagrangian& L, const VariationField& var,
                               const JetScalar& t);
double boundary_pairing(const Lagrangian& L, const VariationField& var, double t);

struct PointwiseVariation {
  double dl_pairing = 0.0;     // <dL(j^k gamma), kappa-lifted j^k delta>
  double force_pairing = 0.0;  // <F, delta>
  double boundary_rate = 0.0;  // d/dt <M, j^{k-1} delta>, by jet evaluation
};

PointwiseVariation variation_pointwise(const Lagrangian& L, const VariationField& var,
                                       double t);

struct ActionVariationReport {
  double lhs = 0.0;             // integral of <dL, lifted variation>
  double force_integral = 0.0;  // integral of <F, delta>
  double boundary_start = 0.0;  // <M, j^{k-1} delta> at t0
  double boundary_end = 0.0;    // ... at t1
  double rhs = 0.0;
  double abs_diff = 0.0;
  bool converged = true;  // half-panel comparison stayed within tolerance
};

/// First variation of the action over [t0, t1] evaluated two ways: directly
/// against the lifted variation, and through the force/boundary-momentum
/// decomposition.
ActionVariationReport action_variation(const Lagrangian& L, const VariationField& var,
                                       double t0, double t1, int panels = 64);

/// One basis vector of the admissible boundary variations: tangent
/// components at the start and end (k-1)-velocities, each [a*k+alpha].
struct BoundaryBasisVector {
  std::vector<double> at_start;
  std::vector<double> at_end;
};

std::vector<BoundaryBasisVector> boundary_fixed();
std::vector<BoundaryBasisVector> boundary_free_end(int dim, int k);
std::vector<BoundaryBasisVector> boundary_periodic(int dim, int k);

struct TransversalityResult {
  bool ok = true;
  double max_residual = 0.0;
};

/// Checks that (-M(t0), M(t1)), read through the classical momentum
/// convention, annihilates the span of the given boundary vectors.
TransversalityResult transversality_check(const Lagrangian& L, const CurveEvaluator& curve,
                                          double t0, double t1,
                                          const std::vector<BoundaryBasisVector>& basis,
                                          double tol = 1e-6);

/// Residual of the forced equation: force covector minus the applied
/// external covector at time t.
std::vector<double> forced_el_residual(const Lagrangian& L, const CurveEvaluator& curve,
                                       double t,
                                       const std::function<std::vector<double>(double)>& f_ext);

}  // namespace jetvar
