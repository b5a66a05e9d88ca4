#pragma once

#include <bit>
#include <vector>

#include "jetvar/bundles.hpp"
#include "jetvar/numeric.hpp"

namespace jetvar {

/// Element of the order-k velocity lift of the cotangent bundle, stored with
/// degree-normalized upper-index momenta p^(alpha).
struct CovectorVelocity {
  int dim = 0;
  int k = 0;
  std::vector<double> x;  // [a*(k+1)+alpha]
  std::vector<double> p;  // [a*(k+1)+alpha]
};

/// Element of the cotangent bundle of an order-k velocity space, stored with
/// classical lower-index momenta p_(alpha).
struct CotangentLift {
  int dim = 0;
  int k = 0;
  std::vector<double> x;  // [a*(k+1)+alpha]
  std::vector<double> p;  // [a*(k+1)+alpha]
};

inline double zero_like(double) { return 0.0; }
inline JetScalar zero_like(const JetScalar& a) { return JetScalar(a.shape()); }

/// Duality pairing on the once-repeated lift of a vector bundle: fiber
/// coefficients are indexed by k binary exponents and pair against the
/// complementary exponent,
///   <xi, y> = sum_i sum_e xi_i^(e) y^{i,(1..1)-(e)}.
/// Both arguments must share the all-ones shape and base within 1e-9.
double pairing_iterated(const LiftedVectorElement& xi, const LiftedVectorElement& v);

/// Duality pairing on the order-k velocity lift:
///   <xi, y> = sum_i sum_a C(k,a) xi_i^(a) y^{i,(k-a)}.
double pairing_higher(const LiftedVectorElement& xi, const LiftedVectorElement& v);

/// Classical cotangent/tangent pairing over an order-k velocity space.  The
/// tangent element W sits in the once-lifted bundle with shape (1,k); its
/// tangent components are the coefficients at outer exponent 1.
double pair_cotangent_tangent(const CotangentLift& psi, const HigherVelocity& w);

/// Exchange of the two lift slots (coordinate transpose).  Shape (a,b)
/// becomes (b,a).
HigherVelocity flip_kappa(const HigherVelocity& v);
LiftedVectorElement flip_kappa(const LiftedVectorElement& e);

/// Degree-normalizing isomorphism between the two momentum conventions:
/// p^(alpha) = C(k,alpha)^{-1} p_(k-alpha).
CovectorVelocity dual_eps(const CotangentLift& psi);
CotangentLift dual_eps_inverse(const CovectorVelocity& v);

/// Degree-averaging projection from the once-repeated lift onto the
/// order-k velocity lift: ybar^(a) = C(k,a)^{-1} sum_{|e|=a} y^(e).
/// The base must be holonomic; it is merged.
LiftedVectorElement project_Pk(const LiftedVectorElement& e, double tol = 1e-12);

template <class T>
struct UpsilonResult {
  std::vector<T> point;  // chart coordinates of the base point
  std::vector<T> fiber;
};

/// Element of the order-m velocity lift of a vector bundle in plain
/// coordinate storage (used for momenta results).
template <class T>
struct TruncatedLift {
  int k = 0;
  int dim = 0;
  int fiber_dim = 0;
  std::vector<T> base;   // [a*(k+1)+alpha]
  std::vector<T> fiber;  // [i*(k+1)+alpha]
};

/// Alternating-sum contraction on a doubly-indexed fiber grid:
///   out[c] = sum_a (-1)^a C(m,a) y(a, m-a, c).
template <class T, class F>
std::vector<T> upsilon_grid(int m, int blocks, F&& y) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(blocks));
  for (int c = 0; c < blocks; ++c) {
    T acc = zero_like(y(0, m, c));
    for (int a = 0; a <= m; ++a) {
      const double w = (a % 2 ? -1.0 : 1.0) * binom(m, a);
      acc += w * y(a, m - a, c);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// Boundary-momentum contraction on a doubly-indexed fiber grid: the sum
///   sum_j (-1)^j C(m+1, j+1) * (projection to outer order j, inner m-j)
/// is accumulated in the once-repeated layout (j outer binary slots followed
/// by m-j inner ones, values looked up by per-group exponent sums) and then
/// degree-averaged back to a single order-m index.
///   Result layout: out[alpha*blocks + c].
template <class T, class F>
std::vector<T> momenta_grid(int m, int blocks, F&& y) {
  const int masks = 1 << m;
  std::vector<T> acc;
  acc.reserve(static_cast<std::size_t>(masks) * blocks);
  for (int mask = 0; mask < masks; ++mask)
    for (int c = 0; c < blocks; ++c) acc.push_back(zero_like(y(0, 0, c)));
  for (int j = 0; j <= m; ++j) {
    const double w = (j % 2 ? -1.0 : 1.0) * binom(m + 1, j + 1);
    const int low = (1 << j) - 1;
    for (int mask = 0; mask < masks; ++mask) {
      const int beta = std::popcount(static_cast<unsigned>(mask & low));
      const int gamma = std::popcount(static_cast<unsigned>(mask) >> j);
      for (int c = 0; c < blocks; ++c)
        acc[static_cast<std::size_t>(mask) * blocks + c] += w * y(beta, gamma, c);
    }
  }
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(m + 1) * blocks);
  for (int alpha = 0; alpha <= m; ++alpha) {
    const double norm = 1.0 / binom(m, alpha);
    for (int c = 0; c < blocks; ++c) {
      T s = zero_like(acc[static_cast<std::size_t>(c)]);
      for (int mask = 0; mask < masks; ++mask)
        if (std::popcount(static_cast<unsigned>(mask)) == alpha)
          s += acc[static_cast<std::size_t>(mask) * blocks + c];
      out.push_back(norm * std::move(s));
    }
  }
  return out;
}

/// Integration-by-parts morphism on semi-holonomic elements: returns the
/// base point together with the fiber vector
///   sum_a (-1)^a C(k,a) y^{i,(a,k-a)}.
template <class T>
UpsilonResult<T> upsilon(const SemiHolonomic<T>& phi) {
  UpsilonResult<T> r;
  r.point.reserve(static_cast<std::size_t>(phi.dim));
  for (int a = 0; a < phi.dim; ++a) r.point.push_back(phi.base_at(a, 0));
  r.fiber = upsilon_grid<T>(phi.k, phi.fiber_dim,
                            [&](int b, int g, int c) -> const T& { return phi.fiber_at(c, b, g); });
  return r;
}

/// Boundary-momentum morphism on semi-holonomic elements: result is the
/// order-k velocity lift whose base is the truncated base velocity.
template <class T>
TruncatedLift<T> momenta(const SemiHolonomic<T>& phi) {
  TruncatedLift<T> r;
  r.k = phi.k;
  r.dim = phi.dim;
  r.fiber_dim = phi.fiber_dim;
  r.base.reserve(static_cast<std::size_t>(phi.dim) * (phi.k + 1));
  for (int a = 0; a < phi.dim; ++a)
    for (int mu = 0; mu <= phi.k; ++mu) r.base.push_back(phi.base_at(a, mu));
  std::vector<T> grid = momenta_grid<T>(
      phi.k, phi.fiber_dim,
      [&](int b, int g, int c) -> const T& { return phi.fiber_at(c, b, g); });
  // momenta_grid emits [alpha*blocks + c]; store fiber as [i*(k+1)+alpha].
  r.fiber.reserve(grid.size());
  for (int i = 0; i < phi.fiber_dim; ++i)
    for (int alpha = 0; alpha <= phi.k; ++alpha)
      r.fiber.push_back(grid[static_cast<std::size_t>(alpha) * phi.fiber_dim + i]);
  return r;
}

/// Pairing route for the integration-by-parts fiber: the value of
///   < sum_j (-1)^j C(k,j) iota(proj_{j,k-j} phi), iota(j^k xi) >
/// for covector levels xi[i*(k+1)+alpha].  Well-definedness of the morphism
/// means the value depends on xi only through its order-zero level.
double upsilon_pairing_value(const SemiHolonomicElement& phi, const std::vector<double>& xi);

/// Two-stage route: the outer alternating contraction of order `outer` is
/// applied across the re-indexed nesting, then the inner one of order
/// `inner` (inner + outer must equal phi.k).  Agrees with `upsilon`.
std::vector<double> upsilon_two_stage(const SemiHolonomicElement& phi, int inner, int outer);

/// Matrix of the fiber map of `upsilon` (respectively the two-stage route)
/// on the standard (k+1)^2 fiber basis of a one-dimensional fiber; row
/// vector indexed [b + (K+1) g].
std::vector<double> upsilon_matrix_direct(int K);
std::vector<double> upsilon_matrix_two_stage(int K, int inner, int outer);

}  // namespace jetvar
