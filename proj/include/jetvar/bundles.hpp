#pragma once

#include <functional>
#include <vector>

#include "jetvar/jet.hpp"

namespace jetvar {

/// Smooth curve in a chart: maps a (possibly jet-valued) time to the dim
/// chart coordinates, each carrying the time's shape.  Evaluators are built
/// from closed-form expressions, so jets of any order are exact.
struct CurveEvaluator {
  int dim = 0;
  std::function<std::vector<JetScalar>(const JetScalar& t)> eval;

  std::vector<JetScalar> operator()(const JetScalar& t) const { return eval(t); }
};

/// Point of an iterated velocity bundle over an m-dimensional chart: one
/// truncated-polynomial coordinate per chart direction, all sharing a shape.
/// Shape (k) is a classical k-velocity; shape (k,1) is a velocity of the
/// tangent bundle, and so on.
struct HigherVelocity {
  int dim = 0;
  std::vector<JetScalar> coords;

  const JetShape& shape() const { return coords.at(0).shape(); }
};

/// Element of a vector bundle lifted through velocity functors: holonomic
/// machinery stores the underlying base velocity and one jet per fiber
/// direction.  Fiber jets share the base's shape.
struct LiftedVectorElement {
  HigherVelocity base;
  std::vector<JetScalar> fiber;

  int fiber_dim() const { return static_cast<int>(fiber.size()); }
};

/// Element of the order-k repeated tangent prolongation of a vector bundle
/// whose base part is holonomic: the base is a single 2k-velocity
/// x^{a,(mu)}, mu = 0..2k, while the fiber keeps the full doubly-indexed
/// coefficients y^{i,(b,g)} with 0 <= b,g <= k.  The first fiber index is
/// the outer prolongation index and varies fastest in storage:
/// (0,0), (1,0), ..., (k,0), (0,1), ...
template <class T>
struct SemiHolonomic {
  int k = 0;
  int dim = 0;
  int fiber_dim = 0;
  std::vector<T> base;   // [a * (2k+1) + mu]
  std::vector<T> fiber;  // [i * (k+1)^2 + b + (k+1) * g]

  T& base_at(int a, int mu) { return base[static_cast<std::size_t>(a * (2 * k + 1) + mu)]; }
  const T& base_at(int a, int mu) const {
    return base[static_cast<std::size_t>(a * (2 * k + 1) + mu)];
  }
  T& fiber_at(int i, int b, int g) {
    return fiber[static_cast<std::size_t>(i * (k + 1) * (k + 1) + b + (k + 1) * g)];
  }
  const T& fiber_at(int i, int b, int g) const {
    return fiber[static_cast<std::size_t>(i * (k + 1) * (k + 1) + b + (k + 1) * g)];
  }
};

using SemiHolonomicElement = SemiHolonomic<double>;

/// Jet of a curve: evaluates the curve at t + v (v a fresh order-m
/// generator appended after t's own slots) and returns the coordinates.
/// For scalar t the result coordinates have shape (m).
HigherVelocity curve_jet(const CurveEvaluator& curve, const JetScalar& t, int m);
HigherVelocity curve_jet(const CurveEvaluator& curve, double t, int m);

/// Chart function lifted to a velocity bundle: evaluates f on the
/// coordinates of v and reads off the derivative of the requested order.
/// Requires a rank-1 shape.
double alpha_lift_eval(const std::function<JetScalar(const std::vector<JetScalar>&)>& f,
                       const HigherVelocity& v, int order);

/// Componentwise slot truncation (tower projection between velocity bundles).
HigherVelocity project_velocity(const HigherVelocity& v, int slot, int new_order);

/// Distribute a single-generator velocity over a finer shape by total degree
/// (the holonomic inclusion in coordinates).
HigherVelocity holonomic_include(const HigherVelocity& v, const JetShape& target);
LiftedVectorElement holonomic_include(const LiftedVectorElement& e, const JetShape& target);

/// True when every coordinate is totally symmetric across generators within
/// tol * (1 + max |coeff|) per coordinate.
bool is_holonomic(const HigherVelocity& v, double tol = 1e-12);

/// Collapse a holonomic velocity to its single-generator form.
HigherVelocity merge_velocity(const HigherVelocity& v, double tol = 1e-12);

/// Projection of a semi-holonomic element to lower orders (m, n): keeps
/// fiber coefficients with outer index <= m, inner index <= n, and truncates
/// the base to order m + n.  Result layout: base [a*(m+n+1)+mu], fiber
/// [i*(m+1)*(n+1) + b*(n+1) + g] with the inner index fastest there.
struct SemiHolonomicSlice {
  int m = 0, n = 0, dim = 0, fiber_dim = 0;
  std::vector<double> base;
  std::vector<double> fiber;
  double fiber_at(int i, int b, int g) const {
    return fiber[static_cast<std::size_t>(i * (m + 1) * (n + 1) + b * (n + 1) + g)];
  }
};

SemiHolonomicSlice project_semi(const SemiHolonomicElement& phi, int m, int n);

}  // namespace jetvar
