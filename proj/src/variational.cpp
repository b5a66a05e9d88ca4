#include "jetvar/variational.hpp"

#include <cmath>

namespace jetvar {

namespace {

void check_velocity(const Lagrangian& L, const HigherVelocity& v) {
  if (v.dim != L.dim) throw ShapeError("lagrangian: velocity dimension mismatch");
  if (v.shape().rank() != 1 || v.shape().order(0) != L.k)
    throw ShapeError("lagrangian: expected an order-k velocity");
}

/// Prolonged Lagrangian arguments: coordinates of the curve jets `big`
/// (shape S ++ (s_order + k)) shifted by the argument level beta, in shape
/// S ++ (s_order) ++ (1), with a unit probe in the extra slot at (probe_a,
/// probe_d).  Pass probe_a = -1 for no probe.
std::vector<JetScalar> prolonged_args(const Lagrangian& L, const HigherVelocity& big,
                                      int s_order, int probe_a, int probe_d) {
  const int k = L.k;
  const JetShape& big_shape = big.shape();
  const int ns = big_shape.stride(big_shape.rank() - 1);  // count of the outer shape S
  std::vector<int> orders = big_shape.orders();
  orders.back() = s_order;
  orders.push_back(1);
  JetShape arg_shape{std::move(orders)};
  std::vector<JetScalar> args;
  args.reserve(static_cast<std::size_t>(L.dim) * (k + 1));
  for (int b = 0; b < L.dim; ++b) {
    for (int beta = 0; beta <= k; ++beta) {
      JetScalar a(arg_shape);
      for (int alpha = 0; alpha <= s_order; ++alpha)
        for (int is = 0; is < ns; ++is)
          a.coeff(is + alpha * ns) =
              big.coords[static_cast<std::size_t>(b)].coeff(is + (alpha + beta) * ns);
      if (b == probe_a && beta == probe_d) a.coeff(ns * (s_order + 1)) = 1.0;
      args.push_back(std::move(a));
    }
  }
  return args;
}

/// d/dx^{a,(delta)} of L along the prolonged curve, one jet of shape
/// S ++ (s_order) per requested level delta in [d_lo, k].
std::vector<std::vector<JetScalar>> partials_along(const Lagrangian& L,
                                                   const HigherVelocity& big, int s_order,
                                                   int d_lo) {
  std::vector<std::vector<JetScalar>> out(static_cast<std::size_t>(L.dim));
  for (int a = 0; a < L.dim; ++a) {
    out[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(L.k) + 1);
    for (int d = d_lo; d <= L.k; ++d) {
      std::vector<JetScalar> args = prolonged_args(L, big, s_order, a, d);
      JetScalar lv = L.eval(args);
      out[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)] =
          extract_slot(lv, lv.shape().rank() - 1, 1);
    }
  }
  return out;
}

}  // namespace

Lagrangian lagrangian_free_particle(int dim) {
  Lagrangian L;
  L.dim = dim;
  L.k = 1;
  L.eval = [dim](const std::vector<JetScalar>& xs) {
    JetScalar acc(xs[0].shape());
    for (int a = 0; a < dim; ++a) {
      const JetScalar& v = xs[static_cast<std::size_t>(2 * a + 1)];
      acc += 0.5 * (v * v);
    }
    return acc;
  };
  return L;
}

Lagrangian lagrangian_harmonic(int dim) {
  Lagrangian L;
  L.dim = dim;
  L.k = 1;
  L.eval = [dim](const std::vector<JetScalar>& xs) {
    JetScalar acc(xs[0].shape());
    for (int a = 0; a < dim; ++a) {
      const JetScalar& q = xs[static_cast<std::size_t>(2 * a)];
      const JetScalar& v = xs[static_cast<std::size_t>(2 * a + 1)];
      acc += 0.5 * (v * v - q * q);
    }
    return acc;
  };
  return L;
}

Lagrangian lagrangian_accel_squared(int dim) {
  Lagrangian L;
  L.dim = dim;
  L.k = 2;
  L.eval = [dim](const std::vector<JetScalar>& xs) {
    JetScalar acc(xs[0].shape());
    for (int a = 0; a < dim; ++a) {
      const JetScalar& w = xs[static_cast<std::size_t>(3 * a + 2)];
      acc += w * w;
    }
    return acc;
  };
  return L;
}

CotangentLift differential_dL(const Lagrangian& L, const HigherVelocity& v) {
  check_velocity(L, v);
  const int k = L.k;
  CotangentLift out;
  out.dim = L.dim;
  out.k = k;
  out.x.resize(static_cast<std::size_t>(L.dim) * (k + 1));
  out.p.resize(static_cast<std::size_t>(L.dim) * (k + 1));
  for (int a = 0; a < L.dim; ++a)
    for (int alpha = 0; alpha <= k; ++alpha)
      out.x[static_cast<std::size_t>(a * (k + 1) + alpha)] =
          v.coords[static_cast<std::size_t>(a)].coeff(alpha);
  const JetShape probe_shape{{1}};
  std::vector<JetScalar> args(static_cast<std::size_t>(L.dim) * (k + 1));
  for (int pa = 0; pa < L.dim; ++pa) {
    for (int pd = 0; pd <= k; ++pd) {
      for (int b = 0; b < L.dim; ++b)
        for (int beta = 0; beta <= k; ++beta)
          args[static_cast<std::size_t>(b * (k + 1) + beta)] = JetScalar::constant(
              probe_shape, v.coords[static_cast<std::size_t>(b)].coeff(beta));
      args[static_cast<std::size_t>(pa * (k + 1) + pd)].coeff(1) = 1.0;
      out.p[static_cast<std::size_t>(pa * (k + 1) + pd)] = L.eval(args).coeff(1);
    }
  }
  return out;
}

CovectorVelocity lambda_full(const Lagrangian& L, const HigherVelocity& v) {
  return dual_eps(differential_dL(L, v));
}

CovectorVelocity lambda_reduced(const Lagrangian& L, const HigherVelocity& v) {
  CovectorVelocity full = lambda_full(L, v);
  CovectorVelocity out;
  out.dim = full.dim;
  out.k = full.k - 1;
  out.x.resize(static_cast<std::size_t>(out.dim) * (out.k + 1));
  out.p.resize(static_cast<std::size_t>(out.dim) * (out.k + 1));
  for (int a = 0; a < out.dim; ++a)
    for (int alpha = 0; alpha <= out.k; ++alpha) {
      out.x[static_cast<std::size_t>(a * (out.k + 1) + alpha)] =
          full.x[static_cast<std::size_t>(a * (full.k + 1) + alpha)];
      out.p[static_cast<std::size_t>(a * (out.k + 1) + alpha)] =
          full.p[static_cast<std::size_t>(a * (full.k + 1) + alpha)];
    }
  return out;
}

ForceJet force_jet(const Lagrangian& L, const CurveEvaluator& curve, const JetScalar& t) {
  const int k = L.k;
  const int dim = L.dim;
  HigherVelocity big = curve_jet(curve, t, 2 * k);
  const int sslot = big.shape().rank() - 1;
  std::vector<std::vector<JetScalar>> partial = partials_along(L, big, k, 0);

  SemiHolonomic<JetScalar> phi;
  phi.k = k;
  phi.dim = dim;
  phi.fiber_dim = dim;
  phi.base.resize(static_cast<std::size_t>(dim) * (2 * k + 1));
  phi.fiber.resize(static_cast<std::size_t>(dim) * (k + 1) * (k + 1));
  for (int a = 0; a < dim; ++a)
    for (int mu = 0; mu <= 2 * k; ++mu)
      phi.base_at(a, mu) = extract_slot(big.coords[static_cast<std::size_t>(a)], sslot, mu);
  for (int a = 0; a < dim; ++a) {
    for (int beta = 0; beta <= k; ++beta) {
      const JetScalar& g = partial[static_cast<std::size_t>(a)][static_cast<std::size_t>(k - beta)];
      const int gslot = g.shape().rank() - 1;
      const double norm = 1.0 / binom(k, beta);
      for (int alpha = 0; alpha <= k; ++alpha)
        phi.fiber_at(a, alpha, beta) = norm * extract_slot(g, gslot, alpha);
    }
  }
  UpsilonResult<JetScalar> r = upsilon(phi);
  return ForceJet{std::move(r.point), std::move(r.fiber)};
}

ForceValue force_along(const Lagrangian& L, const CurveEvaluator& curve, double t) {
  ForceJet fj = force_jet(L, curve, JetScalar(t));
  ForceValue out;
  out.x.reserve(fj.x.size());
  out.f.reserve(fj.f.size());
  for (const JetScalar& c : fj.x) out.x.push_back(c.value());
  for (const JetScalar& c : fj.f) out.f.push_back(c.value());
  return out;
}

std::vector<double> force_local_oracle(const Lagrangian& L, const CurveEvaluator& curve,
                                       double t) {
  const int k = L.k;
  HigherVelocity big = curve_jet(curve, JetScalar(t), 2 * k);
  std::vector<double> f(static_cast<std::size_t>(L.dim), 0.0);
  JetShape arg_shape{{k, 1}};
  std::vector<JetScalar> args(static_cast<std::size_t>(L.dim) * (k + 1));
  for (int pa = 0; pa < L.dim; ++pa) {
    for (int pd = 0; pd <= k; ++pd) {
      for (int b = 0; b < L.dim; ++b) {
        for (int beta = 0; beta <= k; ++beta) {
          JetScalar a(arg_shape);
          for (int alpha = 0; alpha <= k; ++alpha)
            a.coeff(alpha) = big.coords[static_cast<std::size_t>(b)].coeff(alpha + beta);
          args[static_cast<std::size_t>(b * (k + 1) + beta)] = std::move(a);
        }
      }
      args[static_cast<std::size_t>(pa * (k + 1) + pd)].coeff(k + 1) = 1.0;
      JetScalar along = extract_slot(L.eval(args), 1, 1);  // d/dx^{pa,(pd)} L as a jet in s
      f[static_cast<std::size_t>(pa)] += (pd % 2 ? -1.0 : 1.0) * along.coeff(pd);
    }
  }
  return f;
}

TruncatedLift<JetScalar> momentum_jet(const Lagrangian& L, const CurveEvaluator& curve,
                                      const JetScalar& t) {
  const int k = L.k;
  const int dim = L.dim;
  HigherVelocity big = curve_jet(curve, t, 2 * k - 1);
  const int sslot = big.shape().rank() - 1;
  std::vector<std::vector<JetScalar>> partial = partials_along(L, big, k - 1, 1);

  SemiHolonomic<JetScalar> phi;
  phi.k = k - 1;
  phi.dim = dim;
  phi.fiber_dim = dim;
  phi.base.resize(static_cast<std::size_t>(dim) * (2 * k - 1));
  phi.fiber.resize(static_cast<std::size_t>(dim) * k * k);
  for (int a = 0; a < dim; ++a)
    for (int mu = 0; mu <= 2 * (k - 1); ++mu)
      phi.base_at(a, mu) = extract_slot(big.coords[static_cast<std::size_t>(a)], sslot, mu);
  for (int a = 0; a < dim; ++a) {
    for (int beta = 0; beta <= k - 1; ++beta) {
      const JetScalar& g = partial[static_cast<std::size_t>(a)][static_cast<std::size_t>(k - beta)];
      const int gslot = g.shape().rank() - 1;
      const double norm = 1.0 / binom(k, beta);
      for (int alpha = 0; alpha <= k - 1; ++alpha)
        phi.fiber_at(a, alpha, beta) = norm * extract_slot(g, gslot, alpha);
    }
  }
  return momenta(phi);
}

CovectorVelocity momentum_along(const Lagrangian& L, const CurveEvaluator& curve, double t) {
  TruncatedLift<JetScalar> lift = momentum_jet(L, curve, JetScalar(t));
  CovectorVelocity out;
  out.dim = lift.dim;
  out.k = lift.k;
  out.x.reserve(lift.base.size());
  out.p.reserve(lift.fiber.size());
  for (const JetScalar& c : lift.base) out.x.push_back(c.value());
  for (const JetScalar& c : lift.fiber) out.p.push_back(c.value());
  return out;
}

CovectorVelocity momentum_local_oracle(const Lagrangian& L, const CurveEvaluator& curve,
                                       double t) {
  const int k = L.k;
  HigherVelocity big = curve_jet(curve, JetScalar(t), 2 * k - 1);
  JetShape arg_shape{{k - 1, 1}};
  std::vector<JetScalar> args(static_cast<std::size_t>(L.dim) * (k + 1));
  CotangentLift psi;
  psi.dim = L.dim;
  psi.k = k - 1;
  psi.x.resize(static_cast<std::size_t>(L.dim) * k);
  psi.p.assign(static_cast<std::size_t>(L.dim) * k, 0.0);
  for (int a = 0; a < L.dim; ++a)
    for (int alpha = 0; alpha <= k - 1; ++alpha)
      psi.x[static_cast<std::size_t>(a * k + alpha)] =
          big.coords[static_cast<std::size_t>(a)].coeff(alpha);
  for (int pa = 0; pa < L.dim; ++pa) {
    for (int pd = 1; pd <= k; ++pd) {
      for (int b = 0; b < L.dim; ++b) {
        for (int beta = 0; beta <= k; ++beta) {
          JetScalar a(arg_shape);
          for (int alpha = 0; alpha <= k - 1; ++alpha)
            a.coeff(alpha) = big.coords[static_cast<std::size_t>(b)].coeff(alpha + beta);
          args[static_cast<std::size_t>(b * (k + 1) + beta)] = std::move(a);
        }
      }
      args[static_cast<std::size_t>(pa * (k + 1) + pd)].coeff(k) = 1.0;
      JetScalar along = extract_slot(L.eval(args), 1, 1);
      // d/dx^{(pd)} contributes to p_(alpha) for alpha = pd - 1 - beta.
      for (int beta = 0; beta <= pd - 1; ++beta) {
        const int alpha = pd - 1 - beta;
        psi.p[static_cast<std::size_t>(pa * k + alpha)] +=
            (beta % 2 ? -1.0 : 1.0) * along.coeff(beta);
      }
    }
  }
  return dual_eps(psi);
}

JetScalar boundary_pairing_jet(const Lagrangian& L, const VariationField& var,
                               const JetScalar& t) {
  const int k = L.k;
  TruncatedLift<JetScalar> m = momentum_jet(L, var.curve, t);
  HigherVelocity dj = curve_jet(var.delta, t, k - 1);
  const int dslot = dj.shape().rank() - 1;
  JetScalar b(t.shape());
  for (int a = 0; a < L.dim; ++a)
    for (int alpha = 0; alpha <= k - 1; ++alpha)
      b += binom(k - 1, alpha) *
           (m.fiber[static_cast<std::size_t>(a * k + alpha)] *
            extract_slot(dj.coords[static_cast<std::size_t>(a)], dslot, k - 1 - alpha));
  return b;
}

double boundary_pairing(const Lagrangian& L, const VariationField& var, double t) {
  const int k = L.k;
  TruncatedLift<JetScalar> m = momentum_jet(L, var.curve, JetScalar(t));
  // Covector side of the order-(k-1) pairing.
  const JetShape s{{k - 1}};
  LiftedVectorElement xi;
  xi.base.dim = L.dim;
  for (int a = 0; a < L.dim; ++a) {
    JetScalar bx(s), bp(s);
    for (int alpha = 0; alpha <= k - 1; ++alpha) {
      bx.coeff(alpha) = m.base[static_cast<std::size_t>(a * k + alpha)].value();
      bp.coeff(alpha) = m.fiber[static_cast<std::size_t>(a * k + alpha)].value();
    }
    xi.base.coords.push_back(std::move(bx));
    xi.fiber.push_back(std::move(bp));
  }
  LiftedVectorElement v;
  v.base = curve_jet(var.curve, t, k - 1);
  v.fiber = curve_jet(var.delta, t, k - 1).coords;
  return pairing_higher(xi, v);
}

PointwiseVariation variation_pointwise(const Lagrangian& L, const VariationField& var,
                                       double t) {
  const int k = L.k;
  PointwiseVariation out;

  HigherVelocity v = curve_jet(var.curve, t, k);
  CotangentLift psi = differential_dL(L, v);
  HigherVelocity dj = curve_jet(var.delta, t, k);
  // kappa-lifted variation: order-k jet of the tangent curve, slots swapped.
  HigherVelocity lifted;
  lifted.dim = L.dim;
  const JetShape pair_shape{{k, 1}};
  for (int a = 0; a < L.dim; ++a) {
    JetScalar c(pair_shape);
    for (int alpha = 0; alpha <= k; ++alpha) {
      c.coeff(alpha) = v.coords[static_cast<std::size_t>(a)].coeff(alpha);
      c.coeff(alpha + (k + 1)) = dj.coords[static_cast<std::size_t>(a)].coeff(alpha);
    }
    lifted.coords.push_back(std::move(c));
  }
  out.dl_pairing = pair_cotangent_tangent(psi, flip_kappa(lifted));

  ForceValue f = force_along(L, var.curve, t);
  for (int a = 0; a < L.dim; ++a)
    out.force_pairing += f.f[static_cast<std::size_t>(a)] *
                         dj.coords[static_cast<std::size_t>(a)].coeff(0);

  JetScalar b = boundary_pairing_jet(L, var, seed_variable(JetShape{{1}}, t, 0));
  out.boundary_rate = b.coeff(1);
  return out;
}

namespace {

double dl_pair_at(const Lagrangian& L, const VariationField& var, double t) {
  const int k = L.k;
  HigherVelocity v = curve_jet(var.curve, t, k);
  CotangentLift psi = differential_dL(L, v);
  HigherVelocity dj = curve_jet(var.delta, t, k);
  double s = 0.0;
  for (int a = 0; a < L.dim; ++a)
    for (int alpha = 0; alpha <= k; ++alpha)
      s += psi.p[static_cast<std::size_t>(a * (k + 1) + alpha)] *
           dj.coords[static_cast<std::size_t>(a)].coeff(alpha);
  return s;
}

double force_pair_at(const Lagrangian& L, const VariationField& var, double t) {
  ForceValue f = force_along(L, var.curve, t);
  std::vector<JetScalar> d = var.delta.eval(JetScalar(t));
  double s = 0.0;
  for (int a = 0; a < L.dim; ++a)
    s += f.f[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(a)].value();
  return s;
}

}  // namespace

ActionVariationReport action_variation(const Lagrangian& L, const VariationField& var,
                                       double t0, double t1, int panels) {
  ActionVariationReport r;
  auto lhs_f = [&](double t) { return dl_pair_at(L, var, t); };
  auto rhs_f = [&](double t) { return force_pair_at(L, var, t); };
  r.lhs = integrate_gl5(lhs_f, t0, t1, panels);
  r.force_integral = integrate_gl5(rhs_f, t0, t1, panels);
  r.boundary_start = boundary_pairing(L, var, t0);
  r.boundary_end = boundary_pairing(L, var, t1);
  r.rhs = r.force_integral + r.boundary_end - r.boundary_start;
  r.abs_diff = std::fabs(r.lhs - r.rhs);
  const int coarse = std::max(1, panels / 2);
  const double lhs_c = integrate_gl5(lhs_f, t0, t1, coarse);
  const double rhs_c = integrate_gl5(rhs_f, t0, t1, coarse);
  const double scale = std::max({1.0, std::fabs(r.lhs), std::fabs(r.rhs)});
  r.converged = std::fabs(r.lhs - lhs_c) <= 1e-8 * scale &&
                std::fabs(r.force_integral - rhs_c) <= 1e-8 * scale;
  return r;
}

std::vector<BoundaryBasisVector> boundary_fixed() { return {}; }

std::vector<BoundaryBasisVector> boundary_free_end(int dim, int k) {
  std::vector<BoundaryBasisVector> basis;
  const int n = dim * k;
  for (int j = 0; j < n; ++j) {
    BoundaryBasisVector w;
    w.at_start.assign(static_cast<std::size_t>(n), 0.0);
    w.at_end.assign(static_cast<std::size_t>(n), 0.0);
    w.at_end[static_cast<std::size_t>(j)] = 1.0;
    basis.push_back(std::move(w));
  }
  return basis;
}

std::vector<BoundaryBasisVector> boundary_periodic(int dim, int k) {
  std::vector<BoundaryBasisVector> basis;
  const int n = dim * k;
  for (int j = 0; j < n; ++j) {
    BoundaryBasisVector w;
    w.at_start.assign(static_cast<std::size_t>(n), 0.0);
    w.at_end.assign(static_cast<std::size_t>(n), 0.0);
    w.at_start[static_cast<std::size_t>(j)] = 1.0;
    w.at_end[static_cast<std::size_t>(j)] = 1.0;
    basis.push_back(std::move(w));
  }
  return basis;
}

TransversalityResult transversality_check(const Lagrangian& L, const CurveEvaluator& curve,
                                          double t0, double t1,
                                          const std::vector<BoundaryBasisVector>& basis,
                                          double tol) {
  const int n = L.dim * L.k;
  CotangentLift p0 = dual_eps_inverse(momentum_along(L, curve, t0));
  CotangentLift p1 = dual_eps_inverse(momentum_along(L, curve, t1));
  TransversalityResult r;
  for (const BoundaryBasisVector& w : basis) {
    if (static_cast<int>(w.at_start.size()) != n || static_cast<int>(w.at_end.size()) != n)
      throw ShapeError("transversality_check: basis vector has wrong length");
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      s += -p0.p[static_cast<std::size_t>(j)] * w.at_start[static_cast<std::size_t>(j)] +
           p1.p[static_cast<std::size_t>(j)] * w.at_end[static_cast<std::size_t>(j)];
    r.max_residual = std::max(r.max_residual, std::fabs(s));
  }
  r.ok = r.max_residual <= tol;
  return r;
}

std::vector<double> forced_el_residual(
    const Lagrangian& L, const CurveEvaluator& curve, double t,
    const std::function<std::vector<double>(double)>& f_ext) {
  ForceValue f = force_along(L, curve, t);
  std::vector<double> ext = f_ext(t);
  if (ext.size() != f.f.size())
    throw ShapeError("forced_el_residual: external covector has wrong dimension");
  std::vector<double> r(f.f.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.f[i] - ext[i];
  return r;
}

}  // namespace jetvar
