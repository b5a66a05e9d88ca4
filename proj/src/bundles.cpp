#include "jetvar/bundles.hpp"

namespace jetvar {

HigherVelocity curve_jet(const CurveEvaluator& curve, const JetScalar& t, int m) {
  JetScalar time = extend_slots(t, {m});
  const int slot = time.shape().rank() - 1;
  if (m >= 1) time.coeff(time.shape().stride(slot)) += 1.0;  // t + v
  HigherVelocity v;
  v.dim = curve.dim;
  v.coords = curve.eval(time);
  if (static_cast<int>(v.coords.size()) != curve.dim)
    throw ShapeError("curve evaluator returned wrong coordinate count");
  return v;
}

HigherVelocity curve_jet(const CurveEvaluator& curve, double t, int m) {
  return curve_jet(curve, JetScalar(t), m);
}

double alpha_lift_eval(const std::function<JetScalar(const std::vector<JetScalar>&)>& f,
                       const HigherVelocity& v, int order) {
  if (v.shape().rank() != 1)
    throw ShapeError("alpha_lift_eval: velocity must have a single generator");
  if (order < 0 || order > v.shape().order(0))
    throw ShapeError("alpha_lift_eval: derivative order out of range");
  return f(v.coords).coeff(order);
}

HigherVelocity project_velocity(const HigherVelocity& v, int slot, int new_order) {
  HigherVelocity out;
  out.dim = v.dim;
  out.coords.reserve(v.coords.size());
  for (const JetScalar& c : v.coords) out.coords.push_back(truncate_slot(c, slot, new_order));
  return out;
}

HigherVelocity holonomic_include(const HigherVelocity& v, const JetShape& target) {
  HigherVelocity out;
  out.dim = v.dim;
  out.coords.reserve(v.coords.size());
  for (const JetScalar& c : v.coords) out.coords.push_back(split_slots(c, target));
  return out;
}

LiftedVectorElement holonomic_include(const LiftedVectorElement& e, const JetShape& target) {
  LiftedVectorElement out;
  out.base = holonomic_include(e.base, target);
  out.fiber.reserve(e.fiber.size());
  for (const JetScalar& f : e.fiber) out.fiber.push_back(split_slots(f, target));
  return out;
}

bool is_holonomic(const HigherVelocity& v, double tol) {
  for (const JetScalar& c : v.coords)
    if (!is_symmetric(c, tol)) return false;
  return true;
}

HigherVelocity merge_velocity(const HigherVelocity& v, double tol) {
  HigherVelocity out;
  out.dim = v.dim;
  out.coords.reserve(v.coords.size());
  for (const JetScalar& c : v.coords) out.coords.push_back(merge_slots(c, tol));
  return out;
}

SemiHolonomicSlice project_semi(const SemiHolonomicElement& phi, int m, int n) {
  if (m < 0 || m > phi.k || n < 0 || n > phi.k)
    throw ShapeError("project_semi: orders out of range");
  SemiHolonomicSlice s;
  s.m = m;
  s.n = n;
  s.dim = phi.dim;
  s.fiber_dim = phi.fiber_dim;
  s.base.resize(static_cast<std::size_t>(phi.dim) * (m + n + 1));
  for (int a = 0; a < phi.dim; ++a)
    for (int mu = 0; mu <= m + n; ++mu)
      s.base[static_cast<std::size_t>(a * (m + n + 1) + mu)] = phi.base_at(a, mu);
  s.fiber.resize(static_cast<std::size_t>(phi.fiber_dim) * (m + 1) * (n + 1));
  for (int i = 0; i < phi.fiber_dim; ++i)
    for (int b = 0; b <= m; ++b)
      for (int g = 0; g <= n; ++g)
        s.fiber[static_cast<std::size_t>(i * (m + 1) * (n + 1) + b * (n + 1) + g)] =
            phi.fiber_at(i, b, g);
  return s;
}

}  // namespace jetvar
