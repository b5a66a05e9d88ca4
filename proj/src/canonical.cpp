#include "jetvar/canonical.hpp"

#include <cmath>

namespace jetvar {

namespace {

void check_all_ones(const JetShape& s, const char* what) {
  for (int j = 0; j < s.rank(); ++j)
    if (s.order(j) != 1)
      throw ShapeError(std::string(what) + ": requires the once-repeated shape (1,...,1)");
}

void check_base_agreement(const HigherVelocity& a, const HigherVelocity& b) {
  if (a.dim != b.dim || a.shape() != b.shape())
    throw ShapeError("pairing: base dimensions or shapes differ");
  double scale = 1.0;
  for (const JetScalar& c : a.coords) scale = std::max(scale, 1.0 + c.max_abs_coeff());
  for (int i = 0; i < a.dim; ++i)
    for (int idx = 0; idx < a.shape().coeff_count(); ++idx)
      if (std::fabs(a.coords[static_cast<std::size_t>(i)].coeff(idx) -
                    b.coords[static_cast<std::size_t>(i)].coeff(idx)) > 1e-9 * scale)
        throw DomainError("pairing: arguments sit over different base points");
}

}  // namespace

double pairing_iterated(const LiftedVectorElement& xi, const LiftedVectorElement& v) {
  if (xi.fiber_dim() != v.fiber_dim())
    throw ShapeError("pairing_iterated: fiber dimensions differ");
  check_all_ones(xi.base.shape(), "pairing_iterated");
  if (xi.base.shape() != v.base.shape())
    throw ShapeError("pairing_iterated: shapes differ");
  check_base_agreement(xi.base, v.base);
  const int count = xi.base.shape().coeff_count();
  const int full = count - 1;
  double total = 0.0;
  for (int i = 0; i < xi.fiber_dim(); ++i)
    for (int idx = 0; idx < count; ++idx)
      total += xi.fiber[static_cast<std::size_t>(i)].coeff(idx) *
               v.fiber[static_cast<std::size_t>(i)].coeff(full - idx);
  return total;
}

double pairing_higher(const LiftedVectorElement& xi, const LiftedVectorElement& v) {
  if (xi.fiber_dim() != v.fiber_dim())
    throw ShapeError("pairing_higher: fiber dimensions differ");
  if (xi.base.shape().rank() != 1)
    throw ShapeError("pairing_higher: requires a single-generator shape");
  if (xi.base.shape() != v.base.shape())
    throw ShapeError("pairing_higher: shapes differ");
  check_base_agreement(xi.base, v.base);
  const int k = xi.base.shape().order(0);
  double total = 0.0;
  for (int i = 0; i < xi.fiber_dim(); ++i)
    for (int a = 0; a <= k; ++a)
      total += binom(k, a) * xi.fiber[static_cast<std::size_t>(i)].coeff(a) *
               v.fiber[static_cast<std::size_t>(i)].coeff(k - a);
  return total;
}

double pair_cotangent_tangent(const CotangentLift& psi, const HigherVelocity& w) {
  const JetShape& s = w.shape();
  if (s.rank() != 2 || s.order(0) != 1 || s.order(1) != psi.k)
    throw ShapeError("pair_cotangent_tangent: tangent element must have shape (1,k)");
  if (psi.dim != w.dim) throw ShapeError("pair_cotangent_tangent: dimensions differ");
  double scale = 1.0;
  for (const JetScalar& c : w.coords) scale = std::max(scale, 1.0 + c.max_abs_coeff());
  double total = 0.0;
  for (int a = 0; a < psi.dim; ++a) {
    const JetScalar& c = w.coords[static_cast<std::size_t>(a)];
    for (int alpha = 0; alpha <= psi.k; ++alpha) {
      if (std::fabs(psi.x[static_cast<std::size_t>(a * (psi.k + 1) + alpha)] -
                    c.coeff(2 * alpha)) > 1e-9 * scale)
        throw DomainError("pair_cotangent_tangent: base points differ");
      total += psi.p[static_cast<std::size_t>(a * (psi.k + 1) + alpha)] * c.coeff(2 * alpha + 1);
    }
  }
  return total;
}

HigherVelocity flip_kappa(const HigherVelocity& v) {
  HigherVelocity out;
  out.dim = v.dim;
  out.coords.reserve(v.coords.size());
  for (const JetScalar& c : v.coords) out.coords.push_back(transpose_slots(c));
  return out;
}

LiftedVectorElement flip_kappa(const LiftedVectorElement& e) {
  LiftedVectorElement out;
  out.base = flip_kappa(e.base);
  out.fiber.reserve(e.fiber.size());
  for (const JetScalar& f : e.fiber) out.fiber.push_back(transpose_slots(f));
  return out;
}

CovectorVelocity dual_eps(const CotangentLift& psi) {
  CovectorVelocity out;
  out.dim = psi.dim;
  out.k = psi.k;
  out.x = psi.x;
  out.p.resize(psi.p.size());
  for (int a = 0; a < psi.dim; ++a)
    for (int alpha = 0; alpha <= psi.k; ++alpha)
      out.p[static_cast<std::size_t>(a * (psi.k + 1) + alpha)] =
          psi.p[static_cast<std::size_t>(a * (psi.k + 1) + psi.k - alpha)] / binom(psi.k, alpha);
  return out;
}

CotangentLift dual_eps_inverse(const CovectorVelocity& v) {
  CotangentLift out;
  out.dim = v.dim;
  out.k = v.k;
  out.x = v.x;
  out.p.resize(v.p.size());
  for (int a = 0; a < v.dim; ++a)
    for (int alpha = 0; alpha <= v.k; ++alpha)
      out.p[static_cast<std::size_t>(a * (v.k + 1) + alpha)] =
          binom(v.k, alpha) * v.p[static_cast<std::size_t>(a * (v.k + 1) + v.k - alpha)];
  return out;
}

LiftedVectorElement project_Pk(const LiftedVectorElement& e, double tol) {
  check_all_ones(e.base.shape(), "project_Pk");
  const int k = e.base.shape().rank();
  if (!is_holonomic(e.base, tol))
    throw HolonomyError("project_Pk: base velocity is not holonomic");
  LiftedVectorElement out;
  out.base = merge_velocity(e.base, tol);
  const int masks = e.base.shape().coeff_count();
  out.fiber.reserve(e.fiber.size());
  for (const JetScalar& f : e.fiber) {
    JetScalar g{JetShape({k})};
    for (int mask = 0; mask < masks; ++mask)
      g.coeff(std::popcount(static_cast<unsigned>(mask))) += f.coeff(mask);
    for (int alpha = 0; alpha <= k; ++alpha) g.coeff(alpha) /= binom(k, alpha);
    out.fiber.push_back(std::move(g));
  }
  return out;
}

double upsilon_pairing_value(const SemiHolonomicElement& phi, const std::vector<double>& xi) {
  const int k = phi.k;
  const int fd = phi.fiber_dim;
  if (static_cast<int>(xi.size()) != fd * (k + 1))
    throw ShapeError("upsilon_pairing_value: covector level array has wrong size");
  const int masks = 1 << k;
  double total = 0.0;
  for (int i = 0; i < fd; ++i) {
    for (int mask = 0; mask < masks; ++mask) {
      double tilde = 0.0;
      for (int j = 0; j <= k; ++j) {
        const double w = (j % 2 ? -1.0 : 1.0) * binom(k, j);
        const int beta = std::popcount(static_cast<unsigned>(mask & ((1 << j) - 1)));
        const int gamma = std::popcount(static_cast<unsigned>(mask) >> j);
        tilde += w * phi.fiber_at(i, beta, gamma);
      }
      const int level = k - std::popcount(static_cast<unsigned>(mask));
      total += xi[static_cast<std::size_t>(i * (k + 1) + level)] * tilde;
    }
  }
  return total;
}

std::vector<double> upsilon_two_stage(const SemiHolonomicElement& phi, int inner, int outer) {
  if (inner + outer != phi.k || inner < 0 || outer < 0)
    throw ShapeError("upsilon_two_stage: inner + outer must equal the element order");
  const int fd = phi.fiber_dim;
  const int ib = inner + 1;  // inner index range per slot
  // Re-index into the nested layout: outer pair (b1,g1) in {0..outer}^2 over
  // blocks c = (i, b2, g2) with b2,g2 in {0..inner}; the nested value is the
  // original coefficient at the slotwise sums.
  const int blocks = fd * ib * ib;
  std::vector<double> stage1 = upsilon_grid<double>(
      outer, blocks, [&](int b1, int g1, int c) {
        const int i = c / (ib * ib);
        const int b2 = (c / ib) % ib;
        const int g2 = c % ib;
        return phi.fiber_at(i, b1 + b2, g1 + g2);
      });
  // stage1 is a semi-holonomic fiber of order `inner`; contract it.
  return upsilon_grid<double>(inner, fd, [&](int b2, int g2, int i) {
    return stage1[static_cast<std::size_t>(i * ib * ib + b2 * ib + g2)];
  });
}

std::vector<double> upsilon_matrix_direct(int K) {
  std::vector<double> row(static_cast<std::size_t>((K + 1) * (K + 1)), 0.0);
  for (int a = 0; a <= K; ++a)
    row[static_cast<std::size_t>(a + (K + 1) * (K - a))] = (a % 2 ? -1.0 : 1.0) * binom(K, a);
  return row;
}

std::vector<double> upsilon_matrix_two_stage(int K, int inner, int outer) {
  std::vector<double> row(static_cast<std::size_t>((K + 1) * (K + 1)), 0.0);
  SemiHolonomicElement unit;
  unit.k = K;
  unit.dim = 1;
  unit.fiber_dim = 1;
  unit.base.assign(static_cast<std::size_t>(2 * K + 1), 0.0);
  unit.fiber.assign(static_cast<std::size_t>((K + 1) * (K + 1)), 0.0);
  for (int b = 0; b <= K; ++b) {
    for (int g = 0; g <= K; ++g) {
      unit.fiber_at(0, b, g) = 1.0;
      row[static_cast<std::size_t>(b + (K + 1) * g)] = upsilon_two_stage(unit, inner, outer)[0];
      unit.fiber_at(0, b, g) = 0.0;
    }
  }
  return row;
}

}  // namespace jetvar
