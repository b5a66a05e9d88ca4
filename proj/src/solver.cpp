#include "jetvar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "jetvar/numeric.hpp"

namespace jetvar {

namespace {

void check_config(const SolverConfig& cfg) {
  if (cfg.step <= 0.0 || cfg.newton_tol <= 0.0 || cfg.newton_max_iter <= 0 ||
      cfg.shoot_tol <= 0.0 || cfg.shoot_max_iter <= 0 || cfg.fd_step <= 0.0)
    throw DomainError("solver configuration values must be positive");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

/// EL residual at the state z with candidate top derivative.
std::vector<double> el_residual_at(const Lagrangian& L, const std::vector<double>& z,
                                   const std::vector<double>& top, double t) {
  const int k = L.k;
  const int dim = L.dim;
  std::vector<double> derivs(static_cast<std::size_t>(dim) * (2 * k + 1));
  for (int a = 0; a < dim; ++a) {
    for (int m = 0; m < 2 * k; ++m)
      derivs[static_cast<std::size_t>(a * (2 * k + 1) + m)] =
          z[static_cast<std::size_t>(a * 2 * k + m)];
    derivs[static_cast<std::size_t>(a * (2 * k + 1) + 2 * k)] =
        top[static_cast<std::size_t>(a)];
  }
  CurveEvaluator curve = taylor_curve(dim, t, std::move(derivs), 2 * k);
  return force_local_oracle(L, curve, t);
}

std::vector<double> rhs(const Lagrangian& L, const std::vector<double>& z, double t,
                        const SolverConfig& cfg) {
  const int k = L.k;
  const int dim = L.dim;
  std::vector<double> top = explicit_top_derivative(L, z, t, cfg);
  std::vector<double> dz(z.size());
  for (int a = 0; a < dim; ++a) {
    for (int m = 0; m < 2 * k - 1; ++m)
      dz[static_cast<std::size_t>(a * 2 * k + m)] =
          z[static_cast<std::size_t>(a * 2 * k + m + 1)];
    dz[static_cast<std::size_t>(a * 2 * k + 2 * k - 1)] = top[static_cast<std::size_t>(a)];
  }
  return dz;
}

std::vector<double> rk4_step(const Lagrangian& L, const std::vector<double>& z, double t,
                             double h, const SolverConfig& cfg) {
  const std::size_t n = z.size();
  std::vector<double> k1 = rhs(L, z, t, cfg);
  std::vector<double> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
  std::vector<double> k2 = rhs(L, tmp, t + 0.5 * h, cfg);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
  std::vector<double> k3 = rhs(L, tmp, t + 0.5 * h, cfg);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
  std::vector<double> k4 = rhs(L, tmp, t + h, cfg);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = z[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

/// Newton iteration u -> u - J^{-1} r with finite-difference Jacobian.
/// Returns true on convergence; best holds the final residual norm.
template <class Residual>
bool newton_solve(const Residual& residual, std::vector<double>& u, int max_iter, double tol,
                  double fd_step, double* best) {
  const int n = static_cast<int>(u.size());
  std::vector<double> r = residual(u);
  double rn = max_abs(r);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (rn <= tol) {
      *best = rn;
      return true;
    }
    std::vector<double> jac(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
      std::vector<double> up = u;
      up[static_cast<std::size_t>(j)] += fd_step;
      std::vector<double> rp = residual(up);
      for (int i = 0; i < n; ++i)
        jac[static_cast<std::size_t>(i * n + j)] =
            (rp[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)]) / fd_step;
    }
    std::vector<double> neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    std::vector<double> delta;
    if (!solve_linear(jac, neg, n, 1, delta))
      throw SingularityError("shooting Jacobian is singular");
    for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] += delta[static_cast<std::size_t>(i)];
    r = residual(u);
    rn = max_abs(r);
  }
  *best = rn;
  return rn <= tol;
}

}  // namespace

CurveEvaluator taylor_curve(int dim, double t_center, std::vector<double> derivs, int order) {
  // Taylor coefficients derivs[m] / m!.
  std::vector<double> coeffs(derivs.size());
  double fact = 1.0;
  std::vector<double> inv_fact(static_cast<std::size_t>(order) + 1);
  for (int m = 0; m <= order; ++m) {
    if (m > 1) fact *= m;
    inv_fact[static_cast<std::size_t>(m)] = 1.0 / fact;
  }
  for (int a = 0; a < dim; ++a)
    for (int m = 0; m <= order; ++m)
      coeffs[static_cast<std::size_t>(a * (order + 1) + m)] =
          derivs[static_cast<std::size_t>(a * (order + 1) + m)] *
          inv_fact[static_cast<std::size_t>(m)];

  CurveEvaluator c;
  c.dim = dim;
  c.eval = [dim, t_center, coeffs = std::move(coeffs), order](const JetScalar& t) {
    JetScalar dt = t - t_center;
    std::vector<JetScalar> out;
    out.reserve(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      JetScalar acc = JetScalar::constant(
          t.shape(), coeffs[static_cast<std::size_t>(a * (order + 1) + order)]);
      for (int m = order - 1; m >= 0; --m)
        acc = acc * dt +
              JetScalar::constant(t.shape(),
                                  coeffs[static_cast<std::size_t>(a * (order + 1) + m)]);
      out.push_back(std::move(acc));
    }
    return out;
  };
  return c;
}

std::vector<double> explicit_top_derivative(const Lagrangian& L, const std::vector<double>& z,
                                            double t, const SolverConfig& cfg) {
  check_config(cfg);
  const int k = L.k;
  const int dim = L.dim;
  if (static_cast<int>(z.size()) != 2 * k * dim)
    throw ShapeError("explicit_top_derivative: state has wrong length");

  std::vector<double> zero_top(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> base = el_residual_at(L, z, zero_top, t);
  const double scale = std::max(1.0, max_abs(base));

  // The residual is affine in the top derivative; probe the matrix by columns.
  std::vector<double> mat(static_cast<std::size_t>(dim) * dim);
  for (int b = 0; b < dim; ++b) {
    std::vector<double> probe = zero_top;
    probe[static_cast<std::size_t>(b)] = 1.0;
    std::vector<double> col = el_residual_at(L, z, probe, t);
    for (int a = 0; a < dim; ++a)
      mat[static_cast<std::size_t>(a * dim + b)] =
          col[static_cast<std::size_t>(a)] - base[static_cast<std::size_t>(a)];
  }
  if (std::fabs(determinant(mat, dim)) <= 1e-10)
    throw DegenerateError("degenerate Lagrangian: top-order Hessian is singular");

  std::vector<double> neg(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) neg[i] = -base[i];
  std::vector<double> top;
  if (!solve_linear(mat, neg, dim, 1, top))
    throw DegenerateError("degenerate Lagrangian: top-order Hessian is singular");

  for (int iter = 0; iter <= cfg.newton_max_iter; ++iter) {
    std::vector<double> r = el_residual_at(L, z, top, t);
    if (max_abs(r) <= cfg.newton_tol * scale) return top;
    std::vector<double> negr(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) negr[i] = -r[i];
    std::vector<double> delta;
    if (!solve_linear(mat, negr, dim, 1, delta))
      throw DegenerateError("degenerate Lagrangian: top-order Hessian is singular");
    for (int a = 0; a < dim; ++a)
      top[static_cast<std::size_t>(a)] += delta[static_cast<std::size_t>(a)];
  }
  throw ConvergenceError("explicit_top_derivative: residual confirmation failed");
}

Trajectory integrate_el(const Lagrangian& L, const std::vector<double>& z0, double t0,
                        double t1, const SolverConfig& cfg) {
  check_config(cfg);
  if (t1 < t0) throw DomainError("integrate_el: t1 must be >= t0");
  if (static_cast<int>(z0.size()) != 2 * L.k * L.dim)
    throw ShapeError("integrate_el: state has wrong length");
  Trajectory traj;
  traj.dim = L.dim;
  traj.k = L.k;
  traj.states.push_back({t0, z0});
  const double span = t1 - t0;
  const int full = static_cast<int>(std::floor(span / cfg.step + 1e-9));
  std::vector<double> z = z0;
  double t = t0;
  for (int i = 1; i <= full; ++i) {
    const double tn = t0 + i * cfg.step;
    z = rk4_step(L, z, t, tn - t, cfg);
    t = tn;
    if (max_abs(z) > 1e8) throw ConvergenceError("integrate_el: trajectory blow-up");
    traj.states.push_back({t, z});
  }
  if (t < t1 - 1e-12 * std::max(1.0, std::fabs(t1))) {
    z = rk4_step(L, z, t, t1 - t, cfg);
    if (max_abs(z) > 1e8) throw ConvergenceError("integrate_el: trajectory blow-up");
    traj.states.push_back({t1, z});
  }
  return traj;
}

std::vector<double> trajectory_derivatives(const Lagrangian& L, const Trajectory& traj,
                                           double t, const SolverConfig& cfg) {
  if (traj.states.empty()) throw ShapeError("trajectory_derivatives: empty trajectory");
  const int k = L.k;
  const int dim = L.dim;
  // Last stored state at or before t.
  std::size_t lo = 0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (traj.states[i].t <= t + 1e-12) lo = i;
    else break;
  }
  std::vector<double> z = traj.states[lo].z;
  const double dt = t - traj.states[lo].t;
  if (std::fabs(dt) > 1e-14) z = rk4_step(L, z, traj.states[lo].t, dt, cfg);
  std::vector<double> top = explicit_top_derivative(L, z, t, cfg);
  std::vector<double> out(static_cast<std::size_t>(dim) * (2 * k + 1));
  for (int a = 0; a < dim; ++a) {
    for (int m = 0; m < 2 * k; ++m)
      out[static_cast<std::size_t>(a * (2 * k + 1) + m)] =
          z[static_cast<std::size_t>(a * 2 * k + m)];
    out[static_cast<std::size_t>(a * (2 * k + 1) + 2 * k)] = top[static_cast<std::size_t>(a)];
  }
  return out;
}

CurveEvaluator trajectory_curve(const Lagrangian& L, const Trajectory& traj, double t,
                                const SolverConfig& cfg) {
  return taylor_curve(L.dim, t, trajectory_derivatives(L, traj, t, cfg), 2 * L.k);
}

Trajectory shoot_bvp(const Lagrangian& L, const std::vector<double>& start,
                     const std::vector<double>& end, double t0, double t1,
                     const SolverConfig& cfg) {
  check_config(cfg);
  const int k = L.k;
  const int dim = L.dim;
  const int nk = dim * k;
  if (static_cast<int>(start.size()) != nk || static_cast<int>(end.size()) != nk)
    throw ShapeError("shoot_bvp: boundary data must hold dim*k values per end");

  Trajectory last;
  auto integrate_from = [&](const std::vector<double>& u) {
    std::vector<double> z0(static_cast<std::size_t>(2 * k * dim));
    for (int a = 0; a < dim; ++a)
      for (int m = 0; m < 2 * k; ++m)
        z0[static_cast<std::size_t>(a * 2 * k + m)] =
            (m < k) ? start[static_cast<std::size_t>(a * k + m)]
                    : u[static_cast<std::size_t>(a * k + (m - k))];
    return integrate_el(L, z0, t0, t1, cfg);
  };
  auto residual = [&](const std::vector<double>& u) {
    last = integrate_from(u);
    const std::vector<double>& zf = last.states.back().z;
    std::vector<double> r(static_cast<std::size_t>(nk));
    for (int a = 0; a < dim; ++a)
      for (int m = 0; m < k; ++m)
        r[static_cast<std::size_t>(a * k + m)] =
            zf[static_cast<std::size_t>(a * 2 * k + m)] -
            end[static_cast<std::size_t>(a * k + m)];
    return r;
  };

  std::vector<double> u(static_cast<std::size_t>(nk), 0.0);
  double best = 0.0;
  if (!newton_solve(residual, u, cfg.shoot_max_iter, cfg.shoot_tol, cfg.fd_step, &best)) {
    std::ostringstream os;
    os << "shoot_bvp: no convergence after " << cfg.shoot_max_iter
       << " iterations, best residual " << best;
    throw ConvergenceError(os.str());
  }
  last = integrate_from(u);
  return last;
}

Trajectory shoot_natural(const Lagrangian& L, const std::vector<double>& start, double t0,
                         double t1, const SolverConfig& cfg) {
  check_config(cfg);
  const int k = L.k;
  const int dim = L.dim;
  const int nk = dim * k;
  if (static_cast<int>(start.size()) != nk)
    throw ShapeError("shoot_natural: boundary data must hold dim*k values");

  Trajectory last;
  auto integrate_from = [&](const std::vector<double>& u) {
    std::vector<double> z0(static_cast<std::size_t>(2 * k * dim));
    for (int a = 0; a < dim; ++a)
      for (int m = 0; m < 2 * k; ++m)
        z0[static_cast<std::size_t>(a * 2 * k + m)] =
            (m < k) ? start[static_cast<std::size_t>(a * k + m)]
                    : u[static_cast<std::size_t>(a * k + (m - k))];
    return integrate_el(L, z0, t0, t1, cfg);
  };
  auto residual = [&](const std::vector<double>& u) {
    last = integrate_from(u);
    CovectorVelocity mom = momentum_along(L, trajectory_curve(L, last, t1, cfg), t1);
    return mom.p;
  };

  std::vector<double> u(static_cast<std::size_t>(nk), 0.0);
  double best = 0.0;
  if (!newton_solve(residual, u, cfg.shoot_max_iter, cfg.shoot_tol, cfg.fd_step, &best)) {
    std::ostringstream os;
    os << "shoot_natural: no convergence after " << cfg.shoot_max_iter
       << " iterations, best residual " << best;
    throw ConvergenceError(os.str());
  }
  last = integrate_from(u);
  return last;
}

double CubicSpline::eval(double x) const {
  std::size_t i = 0;
  for (std::size_t j = 1; j + 1 < xs.size(); ++j)
    if (x >= xs[j]) i = j;
  const double u = x - xs[i];
  return a[i] + u * (b[i] + u * (c[i] + u * d[i]));
}

double CubicSpline::deriv(double x) const {
  std::size_t i = 0;
  for (std::size_t j = 1; j + 1 < xs.size(); ++j)
    if (x >= xs[j]) i = j;
  const double u = x - xs[i];
  return b[i] + u * (2.0 * c[i] + 3.0 * u * d[i]);
}

CubicSpline cubic_spline_oracle(const std::vector<double>& xs, const std::vector<double>& ys,
                                double v_a, double v_b) {
  const int n = static_cast<int>(xs.size());
  if (n < 2 || ys.size() != xs.size())
    throw DomainError("cubic_spline_oracle: need at least two knots");
  for (int i = 0; i + 1 < n; ++i)
    if (!(xs[static_cast<std::size_t>(i)] < xs[static_cast<std::size_t>(i + 1)]))
      throw DomainError("cubic_spline_oracle: knots must be strictly increasing");

  std::vector<double> h(static_cast<std::size_t>(n - 1));
  std::vector<double> s(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    h[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i + 1)] - xs[static_cast<std::size_t>(i)];
    s[static_cast<std::size_t>(i)] =
        (ys[static_cast<std::size_t>(i + 1)] - ys[static_cast<std::size_t>(i)]) /
        h[static_cast<std::size_t>(i)];
  }

  // Tridiagonal system for the moments (second derivatives) with clamped ends.
  std::vector<double> lower(static_cast<std::size_t>(n), 0.0);
  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  std::vector<double> upper(static_cast<std::size_t>(n), 0.0);
  std::vector<double> rhs_v(static_cast<std::size_t>(n), 0.0);
  diag[0] = 2.0 * h[0];
  upper[0] = h[0];
  rhs_v[0] = 6.0 * (s[0] - v_a);
  for (int i = 1; i < n - 1; ++i) {
    lower[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i - 1)];
    diag[static_cast<std::size_t>(i)] =
        2.0 * (h[static_cast<std::size_t>(i - 1)] + h[static_cast<std::size_t>(i)]);
    upper[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)];
    rhs_v[static_cast<std::size_t>(i)] =
        6.0 * (s[static_cast<std::size_t>(i)] - s[static_cast<std::size_t>(i - 1)]);
  }
  lower[static_cast<std::size_t>(n - 1)] = h[static_cast<std::size_t>(n - 2)];
  diag[static_cast<std::size_t>(n - 1)] = 2.0 * h[static_cast<std::size_t>(n - 2)];
  rhs_v[static_cast<std::size_t>(n - 1)] = 6.0 * (v_b - s[static_cast<std::size_t>(n - 2)]);

  // Thomas algorithm.
  for (int i = 1; i < n; ++i) {
    const double w = lower[static_cast<std::size_t>(i)] / diag[static_cast<std::size_t>(i - 1)];
    diag[static_cast<std::size_t>(i)] -= w * upper[static_cast<std::size_t>(i - 1)];
    rhs_v[static_cast<std::size_t>(i)] -= w * rhs_v[static_cast<std::size_t>(i - 1)];
  }
  std::vector<double> mom(static_cast<std::size_t>(n));
  mom[static_cast<std::size_t>(n - 1)] =
      rhs_v[static_cast<std::size_t>(n - 1)] / diag[static_cast<std::size_t>(n - 1)];
  for (int i = n - 2; i >= 0; --i)
    mom[static_cast<std::size_t>(i)] =
        (rhs_v[static_cast<std::size_t>(i)] -
         upper[static_cast<std::size_t>(i)] * mom[static_cast<std::size_t>(i + 1)]) /
        diag[static_cast<std::size_t>(i)];

  CubicSpline sp;
  sp.xs = xs;
  sp.a.resize(static_cast<std::size_t>(n - 1));
  sp.b.resize(static_cast<std::size_t>(n - 1));
  sp.c.resize(static_cast<std::size_t>(n - 1));
  sp.d.resize(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    sp.a[static_cast<std::size_t>(i)] = ys[static_cast<std::size_t>(i)];
    sp.b[static_cast<std::size_t>(i)] =
        s[static_cast<std::size_t>(i)] -
        h[static_cast<std::size_t>(i)] *
            (2.0 * mom[static_cast<std::size_t>(i)] + mom[static_cast<std::size_t>(i + 1)]) /
            6.0;
    sp.c[static_cast<std::size_t>(i)] = 0.5 * mom[static_cast<std::size_t>(i)];
    sp.d[static_cast<std::size_t>(i)] =
        (mom[static_cast<std::size_t>(i + 1)] - mom[static_cast<std::size_t>(i)]) /
        (6.0 * h[static_cast<std::size_t>(i)]);
  }
  return sp;
}

}  // namespace jetvar
