#pragma once

#include <vector>

#include "jetvar/bundles.hpp"
#include "jetvar/errors.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

struct SolverConfig {
  double step = 1e-3;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  double shoot_tol = 1e-8;
  int shoot_max_iter = 40;
  double fd_step = 1e-6;
};

/// First-order state z = (x^{(0)}, ..., x^{(2k-1)}) per coordinate,
/// z[a*2k + m] = x^{a,(m)}.
struct TrajectoryState {
  double t = 0.0;
  std::vector<double> z;
};

struct Trajectory {
  int dim = 0;
  int k = 0;
  std::vector<TrajectoryState> states;
};

/// Polynomial curve with prescribed derivatives at t_center:
/// derivs[a*(order+1) + m] = x^{a,(m)}(t_center).
CurveEvaluator taylor_curve(int dim, double t_center, std::vector<double> derivs, int order);

/// Solves the Euler-Lagrange residual for the top derivative x^{(2k)} at the
/// state z.  The residual is affine in x^{(2k)} with the top-order Hessian as
/// matrix; a Newton loop confirms the linear solve.
std::vector<double> explicit_top_derivative(const Lagrangian& L, const std::vector<double>& z,
                                            double t, const SolverConfig& cfg = {});

/// Fixed-step RK4 on zdot = (x^{(1)}, ..., x^{(2k-1)}, explicit top
/// derivative); the final time is hit exactly by a last partial step.
Trajectory integrate_el(const Lagrangian& L, const std::vector<double>& z0, double t0,
                        double t1, const SolverConfig& cfg = {});

/// All derivatives x^{a,(m)}, m <= 2k, at time t: the nearest stored state is
/// advanced to t by one partial RK4 step and the top derivative re-solved, so
/// no finite differencing of the numerical solution is involved.
/// Returns [a*(2k+1) + m].
std::vector<double> trajectory_derivatives(const Lagrangian& L, const Trajectory& traj,
                                           double t, const SolverConfig& cfg = {});

/// Local order-2k Taylor representative of the trajectory around t.
CurveEvaluator trajectory_curve(const Lagrangian& L, const Trajectory& traj, double t,
                                const SolverConfig& cfg = {});

/// Shooting for the fixed-endpoint problem: prescribed (k-1)-velocities
/// start/end ([a*k + m], m < k) at t0/t1; the unknown initial derivatives
/// x^{(k)}, ..., x^{(2k-1)}(t0) are found by Newton iteration with a
/// finite-difference Jacobian.
Trajectory shoot_bvp(const Lagrangian& L, const std::vector<double>& start,
                     const std::vector<double>& end, double t0, double t1,
                     const SolverConfig& cfg = {});

/// Shooting on the natural boundary condition: prescribed (k-1)-velocity at
/// t0, all momentum components zero at t1.
Trajectory shoot_natural(const Lagrangian& L, const std::vector<double>& start, double t0,
                         double t1, const SolverConfig& cfg = {});

/// Clamped (complete) cubic spline through strictly increasing knots with
/// endpoint slopes v_a, v_b.  Piecewise y = a + b u + c u^2 + d u^3 in
/// u = x - xs[i].
struct CubicSpline {
  std::vector<double> xs;
  std::vector<double> a, b, c, d;
  double eval(double x) const;
  double deriv(double x) const;
};

CubicSpline cubic_spline_oracle(const std::vector<double>& xs, const std::vector<double>& ys,
                                double v_a, double v_b);

}  // namespace jetvar
