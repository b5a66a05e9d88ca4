#include "jetvar/verify.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <utility>

#include "jetvar/bundles.hpp"
#include "jetvar/canonical.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/numeric.hpp"
#include "jetvar/solver.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

namespace {

struct Check {
  double worst = 0.0;
  int count = 0;
  void add(double err) {
    if (err > worst) worst = err;
    ++count;
  }
};

GroupResult finish(const char* name, const Check& ck, double tol) {
  GroupResult r;
  r.name = name;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max error %.3e over %d checks (tol %.0e)", ck.worst,
                ck.count, tol);
  r.detail = buf;
  r.pass = ck.count > 0 && ck.worst <= tol;
  return r;
}

/// Max coefficient discrepancy relative to the data size; shape mismatch
/// counts as an outright failure.
double scaled_diff(const JetScalar& a, const JetScalar& b) {
  if (a.shape() != b.shape()) return 1.0;
  const double scale = 1.0 + std::max(a.max_abs_coeff(), b.max_abs_coeff());
  double worst = 0.0;
  for (int i = 0; i < a.shape().coeff_count(); ++i)
    worst = std::max(worst, std::fabs(a.coeff(i) - b.coeff(i)));
  return worst / scale;
}

double rel3(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

JetShape random_shape(SplitMix64& rng) {
  const int rank = 1 + rng.below(3);
  std::vector<int> orders;
  for (int j = 0; j < rank; ++j) orders.push_back(1 + rng.below(3));
  return JetShape(orders);
}

JetScalar random_jet(SplitMix64& rng, const JetShape& s) {
  std::vector<double> c(static_cast<std::size_t>(s.coeff_count()));
  for (double& v : c) v = rng.symmetric();
  return JetScalar(s, std::move(c));
}

std::vector<double> random_vec(SplitMix64& rng, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& v : out) v = rng.symmetric();
  return out;
}

SemiHolonomicElement random_semi(SplitMix64& rng, int k, int dim, int fd) {
  SemiHolonomicElement phi;
  phi.k = k;
  phi.dim = dim;
  phi.fiber_dim = fd;
  phi.base = random_vec(rng, dim * (2 * k + 1));
  phi.fiber = random_vec(rng, fd * (k + 1) * (k + 1));
  return phi;
}

int popcnt(int mask) { return std::popcount(static_cast<unsigned>(mask)); }

/// Pairing of a level-indexed covector xi[i*(k+1)+level] with an element of
/// the once-repeated bundle given by its mask coefficients X[mask*fd+i]; the
/// covector is included holonomically, so its mask coefficient at e equals
/// its level-|e| entry and the pairing contracts complementary masks.
double pair_masks(int k, int fd, const std::vector<double>& xi, const std::vector<double>& X) {
  double total = 0.0;
  for (int i = 0; i < fd; ++i)
    for (int mask = 0; mask < (1 << k); ++mask)
      total += xi[static_cast<std::size_t>(i * (k + 1) + (k - popcnt(mask)))] *
               X[static_cast<std::size_t>(mask * fd + i)];
  return total;
}

struct PolyTerm {
  double c = 0.0;
  std::vector<std::pair<int, int>> fac;  // (argument index, power)
};

JetScalar eval_poly(const std::vector<PolyTerm>& terms, const std::vector<JetScalar>& args) {
  JetScalar total = JetScalar::constant(args.at(0).shape(), 0.0);
  for (const PolyTerm& t : terms) {
    JetScalar prod = JetScalar::constant(args.at(0).shape(), t.c);
    for (const auto& [idx, pw] : t.fac) prod = prod * jet_powi(args[static_cast<std::size_t>(idx)], pw);
    total += prod;
  }
  return total;
}

std::vector<PolyTerm> random_terms(SplitMix64& rng, int nargs, int nterms) {
  std::vector<PolyTerm> terms(static_cast<std::size_t>(nterms));
  for (PolyTerm& t : terms) {
    t.c = rng.symmetric();
    const int nf = 1 + rng.below(3);
    for (int j = 0; j < nf; ++j) t.fac.emplace_back(rng.below(nargs), 1 + rng.below(2));
  }
  return terms;
}

Lagrangian random_poly_lagrangian(SplitMix64& rng, int dim, int k) {
  Lagrangian L;
  L.dim = dim;
  L.k = k;
  auto terms = random_terms(rng, dim * (k + 1), 2 + rng.below(3));
  L.eval = [terms](const std::vector<JetScalar>& a) { return eval_poly(terms, a); };
  return L;
}

CurveEvaluator random_poly_curve(SplitMix64& rng, int dim, int order) {
  return taylor_curve(dim, 0.0, random_vec(rng, dim * (order + 1)), order);
}

GroupResult group_ring(std::uint64_t seed) {
  SplitMix64 rng(seed * 1000 + 1);
  Check ck;
  {
    JetScalar a{JetShape({1}), {2.0, 3.0}};
    JetScalar b{JetShape({1}), {5.0, 7.0}};
    JetScalar p = a * b;
    ck.add(std::fabs(p.coeff(0) - 10.0));
    ck.add(std::fabs(p.coeff(1) - 29.0));
  }
  {
    JetShape s({1, 1});
    JetScalar a = seed_variable(s, 1.0, 0);
    JetScalar p = a * a;
    const double want[4] = {1.0, 2.0, 0.0, 0.0};
    for (int i = 0; i < 4; ++i) ck.add(std::fabs(p.coeff(i) - want[i]));
  }
  for (int trial = 0; trial < 40; ++trial) {
    JetShape s = random_shape(rng);
    JetScalar a = random_jet(rng, s), b = random_jet(rng, s), c = random_jet(rng, s);
    ck.add(scaled_diff((a * b) * c, a * (b * c)));
    ck.add(scaled_diff(a * b, b * a));
    ck.add(scaled_diff(a * (b + c), a * b + a * c));
    ck.add(scaled_diff((a + b) - b, a));
    ck.add(scaled_diff(JetScalar::constant(s, 1.0) * a, a));
    JetScalar d = b;
    d.coeff(0) = 1.5 + rng.uniform();  // keep the constant term invertible
    ck.add(scaled_diff((a * d) / d, a));
  }
  return finish("ring-axioms", ck, 1e-12);
}

GroupResult group_elementary(std::uint64_t seed) {
  SplitMix64 rng(seed * 1000 + 2);
  Check ck;
  {
    JetScalar e = jet_exp(seed_variable(JetShape({1}), 0.0));
    ck.add(std::fabs(e.coeff(0) - 1.0));
    ck.add(std::fabs(e.coeff(1) - 1.0));
    JetScalar p = jet_powi(seed_variable(JetShape({1}), 3.0), 2);
    ck.add(std::fabs(p.coeff(0) - 9.0));
    ck.add(std::fabs(p.coeff(1) - 6.0));
    JetScalar s = jet_sin(seed_variable(JetShape({2}), 0.0));
    ck.add(std::fabs(s.coeff(0) - 0.0));
    ck.add(std::fabs(s.coeff(1) - 1.0));
    ck.add(std::fabs(s.coeff(2) - 0.0));
  }
  for (int trial = 0; trial < 30; ++trial) {
    JetShape s = random_shape(rng);
    JetScalar a = random_jet(rng, s);
    ck.add(scaled_diff(jet_sin(a) * jet_sin(a) + jet_cos(a) * jet_cos(a),
                       JetScalar::constant(s, 1.0)));
    JetScalar b = random_jet(rng, s);
    b.coeff(0) = 0.5 + 1.5 * rng.uniform();  // positive constant term
    ck.add(scaled_diff(jet_exp(jet_log(b)), b));
    ck.add(scaled_diff(jet_sqrt(b) * jet_sqrt(b), b));
    ck.add(scaled_diff(jet_pow(b, 0.5), jet_sqrt(b)));
    ck.add(scaled_diff(jet_pow(b, -1.0), 1.0 / b));
    JetScalar c = random_jet(rng, s);
    ck.add(scaled_diff(jet_exp(a + c), jet_exp(a) * jet_exp(c)));
    ck.add(scaled_diff(jet_atan(jet_sin(a) / jet_cos(a)), a));
  }
  return finish("elementary-lifts", ck, 1e-11);
}

GroupResult group_lifts(std::uint64_t seed) {
  SplitMix64 rng(seed * 1000 + 3);
  Check ck;
  {
    JetScalar v = seed_variable(JetShape({2}), 5.0);
    ck.add(std::fabs(v.coeff(0) - 5.0));
    ck.add(std::fabs(v.coeff(1) - 1.0));
    ck.add(std::fabs(v.coeff(2) - 0.0));
  }
  {
    CurveEvaluator sq{1, [](const JetScalar& t) { return std::vector<JetScalar>{t * t}; }};
    HigherVelocity v = curve_jet(sq, 1.0, 2);
    ck.add(std::fabs(v.coords[0].coeff(0) - 1.0));
    ck.add(std::fabs(v.coords[0].coeff(1) - 2.0));
    ck.add(std::fabs(v.coords[0].coeff(2) - 2.0));
    JetScalar s4 = jet_sin(seed_variable(JetShape({4}), 0.0));
    const double want[5] = {0.0, 1.0, 0.0, -1.0, 0.0};
    for (int i = 0; i < 5; ++i) ck.add(std::fabs(s4.coeff(i) - want[i]));
  }
  CurveEvaluator mix{1, [](const JetScalar& t) {
                       return std::vector<JetScalar>{jet_sin(t) + t * t};
                     }};
  for (int trial = 0; trial < 20; ++trial) {
    const double t0 = 2.0 * rng.symmetric();
    HigherVelocity v = curve_jet(mix, t0, 4);
    const double want[5] = {std::sin(t0) + t0 * t0, std::cos(t0) + 2.0 * t0,
                            -std::sin(t0) + 2.0, -std::cos(t0), std::sin(t0)};
    for (int i = 0; i < 5; ++i) ck.add(rel3(v.coords[0].coeff(i), want[i]));
    // Jet-valued probe time: the appended generator nests one level deeper,
    // so the probe slot derivative shifts the order by one.
    HigherVelocity w = curve_jet(mix, seed_variable(JetShape({1}), t0), 2);
    HigherVelocity hi = curve_jet(mix, t0, 3);
    JetScalar lower = extract_slot(w.coords[0], 0, 0);
    JetScalar shift = extract_slot(w.coords[0], 0, 1);
    for (int j = 0; j <= 2; ++j) {
      ck.add(rel3(lower.coeff(j), hi.coords[0].coeff(j)));
      ck.add(rel3(shift.coeff(j), hi.coords[0].coeff(j + 1)));
    }
  }
  return finish("lift-identities", ck, 1e-12);
}

GroupResult group_merge_split(std::uint64_t seed) {
  SplitMix64 rng(seed * 1000 + 4);
  Check ck;
  {
    JetScalar a{JetShape({2}), {1.0, 2.0, 3.0}};
    JetScalar s = split_slots(a, JetShape({1, 1}));
    const double want[4] = {1.0, 2.0, 2.0, 3.0};
    for (int i = 0; i < 4; ++i) ck.add(std::fabs(s.coeff(i) - want[i]));
    ck.add(scaled_diff(merge_slots(s), a));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + rng.below(2);
    JetScalar a = random_jet(rng, JetShape({k}));
    JetShape fine(std::vector<int>(static_cast<std::size_t>(k), 1));
    JetScalar s = split_slots(a, fine);
    ck.add(is_symmetric(s) ? 0.0 : 1.0);
    ck.add(scaled_diff(merge_slots(s), a));
    JetScalar r2 = random_jet(rng, JetShape({1 + rng.below(2), 1 + rng.below(2)}));
    ck.add(scaled_diff(transpose_slots(transpose_slots(r2)), r2));
    JetScalar ext = extend_slots(r2, {2});
    ck.add(scaled_diff(extract_slot(ext, 2, 0), r2));
  }
  {
    JetScalar bad{JetShape({1, 1}), {0.0, 1.0, 2.0, 0.0}};
    bool threw = false;
    try {
      merge_slots(bad);
    } catch (const HolonomyError&) {
      threw = true;
    }
    ck.add(threw ? 0.0 : 1.0);
  }
  return finish("merge-split", ck, 1e-12);
}

GroupResult group_alpha_lift(std::uint64_t seed) {
  SplitMix64 rng(seed * 1000 + 5);
  Check ck;
  {
    HigherVelocity v;
    v.dim = 1;
    v.coords = {JetScalar{JetShape({1}), {1.0, 1.0}}};
    auto f = [](const std::vector<JetScalar>& x) { return x[0] * x[0]; };
    ck.add(std::fabs(alpha_lift_eval(f, v, 1) - 2.0));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + rng.below(3);
    CurveEvaluator curve = random_poly_curve(rng, dim, 6);
    auto terms = random_terms(rng, dim, 1 + rng.below(4));
    auto f = [terms](const std::vector<JetScalar>& x) { return eval_poly(terms, x); };
    CurveEvaluator composed{1, [f, curve](const JetScalar& t) {
                              return std::vector<JetScalar>{f(curve(t))};
                            }};
    const double t0 = 0.5 * rng.symmetric();
    HigherVelocity v = curve_jet(curve, t0, 4);
    HigherVelocity fv = curve_jet(composed, t0, 4);
    for (int j = 0; j <= 4; ++j)
      ck.add(rel3(alpha_lift_eval(f, v, j), fv.coords[0].coeff(j)));
  }
  return finish("alpha-lift", ck, 1e-12);
}

GroupResult group_pairings(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 6);
  Check ck;
  {
    HigherVelocity base;
    base.dim = 1;
    base.coords = {JetScalar{JetShape({1}), {0.3, 0.7}}};
    LiftedVectorElement xi{base, {JetScalar{JetShape({1}), {1.0, 2.0}}}};
    LiftedVectorElement v{base, {JetScalar{JetShape({1}), {3.0, 4.0}}}};
    ck.add(std::fabs(pairing_iterated(xi, v) - 10.0));
  }
  {
    HigherVelocity base;
    base.dim = 1;
    base.coords = {JetScalar{JetShape({2}), {0.1, -0.4, 0.9}}};
    LiftedVectorElement xi{base, {JetScalar{JetShape({2}), {1.0, 0.0, 0.0}}}};
    LiftedVectorElement v{base, {JetScalar{JetShape({2}), {0.0, 0.0, 5.0}}}};
    ck.add(std::fabs(pairing_higher(xi, v) - 5.0));
  }
  for (int k = 1; k <= max_k; ++k) {
    JetShape ones(std::vector<int>(static_cast<std::size_t>(k), 1));
    for (int trial = 0; trial < 10; ++trial) {
      const int fd = 1 + rng.below(3);
      HigherVelocity base;
      base.dim = 1;
      base.coords = {random_jet(rng, ones)};
      LiftedVectorElement xi{base, {}}, v{base, {}}, w{base, {}};
      double want = 0.0;
      const int full = ones.coeff_count() - 1;
      for (int i = 0; i < fd; ++i) {
        JetScalar f = random_jet(rng, ones);
        JetScalar mirror{ones};
        for (int idx = 0; idx <= full; ++idx) {
          mirror.coeff(full - idx) = f.coeff(idx);
          want += f.coeff(idx) * f.coeff(idx);
        }
        xi.fiber.push_back(f);
        v.fiber.push_back(mirror);
        w.fiber.push_back(random_jet(rng, ones));
      }
      ck.add(rel3(pairing_iterated(xi, v), want));
      // bilinearity in the second slot
      LiftedVectorElement sum = v;
      for (int i = 0; i < fd; ++i) sum.fiber[static_cast<std::size_t>(i)] += w.fiber[static_cast<std::size_t>(i)];
      ck.add(rel3(pairing_iterated(xi, sum),
                  pairing_iterated(xi, v) + pairing_iterated(xi, w)));
      // single-generator pairing recovers the squared norm through the
      // binomial-weighted mirror
      HigherVelocity hb;
      hb.dim = 1;
      hb.coords = {random_jet(rng, JetShape({k}))};
      LiftedVectorElement hxi{hb, {}}, hv{hb, {}};
      double want2 = 0.0;
      for (int i = 0; i < fd; ++i) {
        JetScalar f = random_jet(rng, JetShape({k}));
        JetScalar mirror{JetShape({k})};
        for (int a = 0; a <= k; ++a) {
          mirror.coeff(k - a) = f.coeff(a) / binom(k, a);
          want2 += f.coeff(a) * f.coeff(a);
        }
        hxi.fiber.push_back(f);
        hv.fiber.push_back(mirror);
      }
      ck.add(rel3(pairing_higher(hxi, hv), want2));
    }
  }
  return finish("pairing-nondegeneracy", ck, 1e-12);
}

GroupResult group_kappa_eps(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 7);
  Check ck;
  {
    CotangentLift psi;
    psi.dim = 1;
    psi.k = 2;
    psi.x = {0.0, 0.0, 0.0};
    psi.p = {6.0, 4.0, 2.0};
    CovectorVelocity cv = dual_eps(psi);
    ck.add(std::fabs(cv.p[0] - 2.0));
    ck.add(std::fabs(cv.p[1] - 2.0));
    ck.add(std::fabs(cv.p[2] - 6.0));
    CotangentLift back = dual_eps_inverse(cv);
    for (int i = 0; i < 3; ++i) ck.add(std::fabs(back.p[static_cast<std::size_t>(i)] - psi.p[static_cast<std::size_t>(i)]));
  }
  {
    CotangentLift psi;
    psi.dim = 1;
    psi.k = 1;
    psi.x = {0.0, 0.0};
    psi.p = {3.5, -1.25};
    CovectorVelocity cv = dual_eps(psi);
    ck.add(std::fabs(cv.p[0] - (-1.25)));
    ck.add(std::fabs(cv.p[1] - 3.5));
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 12; ++trial) {
      const int dim = 1 + rng.below(3);
      JetShape skt({k, 1});
      HigherVelocity W;
      W.dim = dim;
      for (int a = 0; a < dim; ++a) W.coords.push_back(random_jet(rng, skt));
      ck.add([&] {
        HigherVelocity twice = flip_kappa(flip_kappa(W));
        double worst = 0.0;
        for (int a = 0; a < dim; ++a)
          worst = std::max(worst, scaled_diff(twice.coords[static_cast<std::size_t>(a)],
                                              W.coords[static_cast<std::size_t>(a)]));
        return worst;
      }());
      CotangentLift psi;
      psi.dim = dim;
      psi.k = k;
      psi.x.resize(static_cast<std::size_t>(dim * (k + 1)));
      psi.p = random_vec(rng, dim * (k + 1));
      for (int a = 0; a < dim; ++a)
        for (int alpha = 0; alpha <= k; ++alpha)
          psi.x[static_cast<std::size_t>(a * (k + 1) + alpha)] =
              W.coords[static_cast<std::size_t>(a)].coeff(alpha);  // exponent (alpha, 0)
      const double rhs = pair_cotangent_tangent(psi, flip_kappa(W));
      CovectorVelocity cv = dual_eps(psi);
      LiftedVectorElement e1, e2;
      e1.base.dim = dim;
      for (int a = 0; a < dim; ++a) {
        std::vector<double> xcol(static_cast<std::size_t>(k + 1)), pcol(static_cast<std::size_t>(k + 1));
        for (int alpha = 0; alpha <= k; ++alpha) {
          xcol[static_cast<std::size_t>(alpha)] = cv.x[static_cast<std::size_t>(a * (k + 1) + alpha)];
          pcol[static_cast<std::size_t>(alpha)] = cv.p[static_cast<std::size_t>(a * (k + 1) + alpha)];
        }
        e1.base.coords.emplace_back(JetShape({k}), xcol);
        e1.fiber.emplace_back(JetShape({k}), pcol);
      }
      e2.base = e1.base;
      for (int a = 0; a < dim; ++a)
        e2.fiber.push_back(extract_slot(W.coords[static_cast<std::size_t>(a)], 1, 1));
      ck.add(rel3(pairing_higher(e1, e2), rhs));
    }
  }
  return finish("kappa-eps-duality", ck, 1e-12);
}

GroupResult group_projection(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 8);
  Check ck;
  {
    LiftedVectorElement e;
    e.base.dim = 1;
    e.base.coords = {split_slots(JetScalar{JetShape({2}), {0.2, 1.0, -0.5}}, JetShape({1, 1}))};
    e.fiber = {JetScalar{JetShape({1, 1}), {1.0, 2.0, 4.0, 5.0}}};
    LiftedVectorElement p = project_Pk(e);
    ck.add(std::fabs(p.fiber[0].coeff(0) - 1.0));
    ck.add(std::fabs(p.fiber[0].coeff(1) - 3.0));
    ck.add(std::fabs(p.fiber[0].coeff(2) - 5.0));
  }
  for (int k = 1; k <= max_k; ++k) {
    JetShape ones(std::vector<int>(static_cast<std::size_t>(k), 1));
    for (int trial = 0; trial < 12; ++trial) {
      const int dim = 1 + rng.below(2);
      const int fd = 1 + rng.below(3);
      LiftedVectorElement h;
      h.base.dim = dim;
      for (int a = 0; a < dim; ++a) h.base.coords.push_back(random_jet(rng, JetShape({k})));
      for (int i = 0; i < fd; ++i) h.fiber.push_back(random_jet(rng, JetShape({k})));
      LiftedVectorElement inc = holonomic_include(h, ones);
      LiftedVectorElement back = project_Pk(inc);
      for (int a = 0; a < dim; ++a)
        ck.add(scaled_diff(back.base.coords[static_cast<std::size_t>(a)],
                           h.base.coords[static_cast<std::size_t>(a)]));
      for (int i = 0; i < fd; ++i)
        ck.add(scaled_diff(back.fiber[static_cast<std::size_t>(i)],
                           h.fiber[static_cast<std::size_t>(i)]));
    }
  }
  if (max_k >= 2) {
    LiftedVectorElement bad;
    bad.base.dim = 1;
    bad.base.coords = {JetScalar{JetShape({1, 1}), {0.0, 1.0, 2.0, 0.0}}};
    bad.fiber = {JetScalar{JetShape({1, 1}), {0.0, 0.0, 0.0, 0.0}}};
    bool threw = false;
    try {
      project_Pk(bad);
    } catch (const HolonomyError&) {
      threw = true;
    }
    ck.add(threw ? 0.0 : 1.0);
  }
  return finish("projection-inclusion", ck, 1e-12);
}

GroupResult group_upsilon(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 9);
  Check ck;
  {
    SemiHolonomicElement phi;
    phi.k = 1;
    phi.dim = 1;
    phi.fiber_dim = 1;
    phi.base = {0.0, 0.0, 0.0};
    phi.fiber = {7.0, 2.0, 5.0, 9.0};
    ck.add(std::fabs(upsilon(phi).fiber[0] - 3.0));
    phi.fiber = {1.0, 2.0, 4.0, 5.0};
    ck.add(std::fabs(upsilon(phi).fiber[0] - 2.0));
  }
  {
    SemiHolonomicElement phi;
    phi.k = 2;
    phi.dim = 1;
    phi.fiber_dim = 1;
    phi.base.assign(5, 0.0);
    phi.fiber.assign(9, 0.0);
    phi.fiber_at(0, 0, 2) = 1.0;
    phi.fiber_at(0, 1, 1) = 2.0;
    phi.fiber_at(0, 2, 0) = 3.0;
    ck.add(std::fabs(upsilon(phi).fiber[0] - 0.0));
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 15; ++trial) {
      const int dim = 1 + rng.below(2);
      const int fd = 1 + rng.below(3);
      SemiHolonomicElement phi = random_semi(rng, k, dim, fd);
      std::vector<double> xi = random_vec(rng, fd * (k + 1));
      const double pairing = upsilon_pairing_value(phi, xi);
      auto ups = upsilon(phi);
      double local = 0.0;
      for (int i = 0; i < fd; ++i) local += ups.fiber[static_cast<std::size_t>(i)] *
                                            xi[static_cast<std::size_t>(i * (k + 1))];
      const double scale = 1.0 + std::fabs(pairing);
      ck.add(std::fabs(pairing - local) / scale);
      // rechoosing the higher covector levels must not move the value
      std::vector<double> xi2 = xi;
      for (int i = 0; i < fd; ++i)
        for (int lvl = 1; lvl <= k; ++lvl)
          xi2[static_cast<std::size_t>(i * (k + 1) + lvl)] = rng.symmetric();
      ck.add(std::fabs(upsilon_pairing_value(phi, xi2) - pairing) / scale);
      // the contraction kills holonomic elements
      SemiHolonomicElement hol = phi;
      for (int i = 0; i < fd; ++i) {
        std::vector<double> jet = random_vec(rng, 2 * k + 1);
        for (int b = 0; b <= k; ++b)
          for (int g = 0; g <= k; ++g) hol.fiber_at(i, b, g) = jet[static_cast<std::size_t>(b + g)];
      }
      auto hu = upsilon(hol);
      for (int i = 0; i < fd; ++i) ck.add(std::fabs(hu.fiber[static_cast<std::size_t>(i)]));
    }
  }
  return finish("upsilon-welldefined", ck, 1e-12);
}

GroupResult group_momenta_recurrence(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 10);
  Check ck;
  {
    SemiHolonomicElement phi;
    phi.k = 1;
    phi.dim = 1;
    phi.fiber_dim = 1;
    phi.base = {0.0, 0.0, 0.0};
    phi.fiber = {1.0, 2.0, 4.0, 5.0};
    auto mu = momenta(phi);
    ck.add(std::fabs(mu.fiber[0] - 1.0));
    ck.add(std::fabs(mu.fiber[1] - 6.0));
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 15; ++trial) {
      const int dim = 1 + rng.below(2);
      const int fd = 1 + rng.below(3);
      SemiHolonomicElement phi = random_semi(rng, k, dim, fd);
      std::vector<double> xi = random_vec(rng, fd * (k + 1));
      auto mu = momenta(phi);
      double lhs = 0.0;
      for (int i = 0; i < fd; ++i)
        for (int a = 0; a <= k; ++a)
          lhs += binom(k, a) * xi[static_cast<std::size_t>(i * (k + 1) + a)] *
                 mu.fiber[static_cast<std::size_t>(i * (k + 1) + (k - a))];
      auto ups = upsilon(phi);
      double rhs1 = 0.0;
      for (int i = 0; i < fd; ++i)
        rhs1 += ups.fiber[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(i * (k + 1))];
      // boundary-momentum map of the element one outer order down, living
      // over the tangent fibration: the extra inner derivative doubles the
      // fiber blocks
      const int blocks = 2 * fd;
      std::vector<double> Z = momenta_grid<double>(k - 1, blocks, [&](int b, int g, int c) {
        const int g2 = c / fd;
        const int i = c % fd;
        return phi.fiber_at(i, b, g + g2);
      });
      std::vector<double> X(static_cast<std::size_t>((1 << k) * fd), 0.0);
      const int low = (1 << (k - 1)) - 1;
      for (int mask = 0; mask < (1 << k); ++mask)
        for (int i = 0; i < fd; ++i)
          X[static_cast<std::size_t>(mask * fd + i)] =
              Z[static_cast<std::size_t>(popcnt(mask & low) * blocks +
                                         ((mask >> (k - 1)) & 1) * fd + i)];
      const double rhs2 = pair_masks(k, fd, xi, X);
      const double scale = 1.0 + std::fabs(lhs);
      ck.add(std::fabs(lhs - rhs1 - rhs2) / scale);
    }
  }
  return finish("momenta-recurrence", ck, 1e-12);
}

GroupResult group_int_by_parts(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 11);
  Check ck;
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 15; ++trial) {
      const int dim = 1 + rng.below(2);
      const int fd = 1 + rng.below(3);
      SemiHolonomicElement phi = random_semi(rng, k, dim, fd);
      std::vector<double> xi = random_vec(rng, fd * (k + 1));
      if (trial == 0 && k == 1 && fd == 1) {
        phi.fiber = {1.0, 2.0, 4.0, 5.0};  // pinned k=1 instance
      }
      double lhs = 0.0;
      for (int i = 0; i < fd; ++i)
        for (int g = 0; g <= k; ++g)
          lhs += binom(k, g) * xi[static_cast<std::size_t>(i * (k + 1) + (k - g))] *
                 phi.fiber_at(i, 0, g);
      auto ups = upsilon(phi);
      double rhs1 = 0.0;
      for (int i = 0; i < fd; ++i)
        rhs1 += ups.fiber[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(i * (k + 1))];
      // tangent prolongation of the boundary-momentum map one inner order
      // down: outer index splits into the leading tangent bit and the rest
      const int blocks = 2 * fd;
      std::vector<double> W = momenta_grid<double>(k - 1, blocks, [&](int b, int g, int c) {
        const int d = c / fd;
        const int i = c % fd;
        return phi.fiber_at(i, d + b, g);
      });
      std::vector<double> X(static_cast<std::size_t>((1 << k) * fd), 0.0);
      for (int mask = 0; mask < (1 << k); ++mask)
        for (int i = 0; i < fd; ++i)
          X[static_cast<std::size_t>(mask * fd + i)] =
              W[static_cast<std::size_t>(popcnt(mask >> 1) * blocks + (mask & 1) * fd + i)];
      const double rhs2 = pair_masks(k, fd, xi, X);
      const double scale = 1.0 + std::fabs(lhs);
      ck.add(std::fabs(lhs - rhs1 - rhs2) / scale);
    }
  }
  return finish("integration-by-parts", ck, 1e-12);
}

GroupResult group_two_stage(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 12);
  Check ck;
  for (int K = 2; K <= 3; ++K) {
    std::vector<double> direct = upsilon_matrix_direct(K);
    for (int inner = 1; inner < K; ++inner) {
      std::vector<double> two = upsilon_matrix_two_stage(K, inner, K - inner);
      for (std::size_t i = 0; i < direct.size(); ++i)
        ck.add(std::fabs(two[i] - direct[i]));
    }
  }
  for (int k = 2; k <= max_k; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      SemiHolonomicElement phi = random_semi(rng, k, 1 + rng.below(2), 1 + rng.below(3));
      auto ups = upsilon(phi);
      for (int inner = 1; inner < k; ++inner) {
        std::vector<double> two = upsilon_two_stage(phi, inner, k - inner);
        for (int i = 0; i < phi.fiber_dim; ++i)
          ck.add(rel3(two[static_cast<std::size_t>(i)], ups.fiber[static_cast<std::size_t>(i)]));
      }
    }
  }
  return finish("upsilon-two-stage", ck, 1e-12);
}

GroupResult group_functoriality(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 13);
  Check ck;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + rng.below(max_k);
    const int d = 1 + rng.below(2);
    const int d2 = 1 + rng.below(2);
    const int f = 1 + rng.below(2);
    const int f2 = 1 + rng.below(2);
    SemiHolonomicElement phi = random_semi(rng, k, d, f);
    // base map components c0 + sum lin x_a + sum quad x_a^2
    std::vector<double> c0 = random_vec(rng, d2);
    std::vector<double> lin = random_vec(rng, d2 * d);
    std::vector<double> quad = random_vec(rng, d2 * d);
    // fiber matrix entries m0 + sum m1 x_a
    std::vector<double> m0 = random_vec(rng, f2 * f);
    std::vector<double> m1 = random_vec(rng, f2 * f * d);
    auto base_map = [&](int c, const std::vector<JetScalar>& x) {
      JetScalar out = JetScalar::constant(x[0].shape(), c0[static_cast<std::size_t>(c)]);
      for (int a = 0; a < d; ++a) {
        out += lin[static_cast<std::size_t>(c * d + a)] * x[static_cast<std::size_t>(a)];
        out += quad[static_cast<std::size_t>(c * d + a)] * (x[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)]);
      }
      return out;
    };
    auto entry = [&](int i, int j, const std::vector<JetScalar>& x) {
      JetScalar out = JetScalar::constant(x[0].shape(), m0[static_cast<std::size_t>(i * f + j)]);
      for (int a = 0; a < d; ++a)
        out += m1[static_cast<std::size_t>((i * f + j) * d + a)] * x[static_cast<std::size_t>(a)];
      return out;
    };
    auto entry_value = [&](int i, int j, const std::vector<double>& x) {
      double out = m0[static_cast<std::size_t>(i * f + j)];
      for (int a = 0; a < d; ++a)
        out += m1[static_cast<std::size_t>((i * f + j) * d + a)] * x[static_cast<std::size_t>(a)];
      return out;
    };
    auto ups = upsilon(phi);
    std::vector<double> x0(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) x0[static_cast<std::size_t>(a)] = phi.base_at(a, 0);
    std::vector<double> lhs(static_cast<std::size_t>(f2), 0.0);
    for (int i = 0; i < f2; ++i)
      for (int j = 0; j < f; ++j)
        lhs[static_cast<std::size_t>(i)] += entry_value(i, j, x0) * ups.fiber[static_cast<std::size_t>(j)];
    // push the element through the morphism
    std::vector<JetScalar> B;
    for (int a = 0; a < d; ++a) {
      std::vector<double> coeffs(static_cast<std::size_t>(2 * k + 1));
      for (int mu = 0; mu <= 2 * k; ++mu) coeffs[static_cast<std::size_t>(mu)] = phi.base_at(a, mu);
      B.emplace_back(JetShape({2 * k}), coeffs);
    }
    SemiHolonomicElement out;
    out.k = k;
    out.dim = d2;
    out.fiber_dim = f2;
    out.base.assign(static_cast<std::size_t>(d2 * (2 * k + 1)), 0.0);
    for (int c = 0; c < d2; ++c) {
      JetScalar nb = base_map(c, B);
      for (int mu = 0; mu <= 2 * k; ++mu) out.base_at(c, mu) = nb.coeff(mu);
    }
    JetShape skk({k, k});
    std::vector<JetScalar> X2;
    for (int a = 0; a < d; ++a) X2.push_back(split_slots(B[static_cast<std::size_t>(a)], skk));
    std::vector<JetScalar> Y;
    for (int j = 0; j < f; ++j) {
      std::vector<double> coeffs(static_cast<std::size_t>((k + 1) * (k + 1)));
      for (int b = 0; b <= k; ++b)
        for (int g = 0; g <= k; ++g)
          coeffs[static_cast<std::size_t>(b + (k + 1) * g)] = phi.fiber_at(j, b, g);
      Y.emplace_back(skk, coeffs);
    }
    out.fiber.assign(static_cast<std::size_t>(f2 * (k + 1) * (k + 1)), 0.0);
    for (int i = 0; i < f2; ++i) {
      JetScalar acc = JetScalar::constant(skk, 0.0);
      for (int j = 0; j < f; ++j) acc += entry(i, j, X2) * Y[static_cast<std::size_t>(j)];
      for (int b = 0; b <= k; ++b)
        for (int g = 0; g <= k; ++g) out.fiber_at(i, b, g) = acc.coeff(b + (k + 1) * g);
    }
    auto ups2 = upsilon(out);
    double scale = 1.0;
    for (int i = 0; i < f2; ++i) scale = std::max(scale, std::fabs(lhs[static_cast<std::size_t>(i)]));
    for (int i = 0; i < f2; ++i)
      ck.add(std::fabs(ups2.fiber[static_cast<std::size_t>(i)] - lhs[static_cast<std::size_t>(i)]) / scale);
    for (int c = 0; c < d2; ++c) {
      std::vector<JetScalar> x0j;
      for (int a = 0; a < d; ++a) x0j.push_back(JetScalar(x0[static_cast<std::size_t>(a)]));
      ck.add(rel3(ups2.point[static_cast<std::size_t>(c)], base_map(c, x0j).value()));
    }
  }
  return finish("functoriality", ck, 1e-9);
}

GroupResult group_force(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 14);
  Check ck;
  {
    Lagrangian L;
    L.dim = 1;
    L.k = 2;
    L.eval = [](const std::vector<JetScalar>& a) { return a[2] * a[2]; };
    CurveEvaluator quartic{1, [](const JetScalar& t) {
                             JetScalar t2 = t * t;
                             return std::vector<JetScalar>{t2 * t2};
                           }};
    ck.add(rel3(force_along(L, quartic, 0.5).f[0], 48.0));
  }
  {
    Lagrangian L = lagrangian_harmonic(1);
    CurveEvaluator sine{1, [](const JetScalar& t) {
                          return std::vector<JetScalar>{jet_sin(t)};
                        }};
    for (double t : {0.3, 1.1, 2.4}) ck.add(std::fabs(force_along(L, sine, t).f[0]));
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 8; ++trial) {
      const int dim = 1 + rng.below(2);
      Lagrangian L = random_poly_lagrangian(rng, dim, k);
      CurveEvaluator curve = random_poly_curve(rng, dim, 2 * k + 2);
      const double t = 0.3 * rng.symmetric();
      std::vector<double> f1 = force_along(L, curve, t).f;
      std::vector<double> f2 = force_local_oracle(L, curve, t);
      double scale = 1.0;
      for (double v : f2) scale = std::max(scale, std::fabs(v));
      for (int a = 0; a < dim; ++a)
        ck.add(std::fabs(f1[static_cast<std::size_t>(a)] - f2[static_cast<std::size_t>(a)]) / scale);
    }
  }
  return finish("force-classical", ck, 1e-9);
}

GroupResult group_momentum(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 15);
  Check ck;
  {
    Lagrangian L;
    L.dim = 1;
    L.k = 2;
    L.eval = [](const std::vector<JetScalar>& a) { return 0.5 * (a[2] * a[2]); };
    CurveEvaluator cubic{1, [](const JetScalar& t) {
                           return std::vector<JetScalar>{t * t * t};
                         }};
    CovectorVelocity cv = momentum_along(L, cubic, 1.0);
    ck.add(rel3(cv.p[0], 6.0));
    ck.add(rel3(cv.p[1], -6.0));
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 8; ++trial) {
      const int dim = 1 + rng.below(2);
      Lagrangian L = random_poly_lagrangian(rng, dim, k);
      CurveEvaluator curve = random_poly_curve(rng, dim, 2 * k + 2);
      const double t = 0.3 * rng.symmetric();
      CovectorVelocity m1 = momentum_along(L, curve, t);
      CovectorVelocity m2 = momentum_local_oracle(L, curve, t);
      double scale = 1.0;
      for (double v : m2.p) scale = std::max(scale, std::fabs(v));
      for (std::size_t i = 0; i < m1.p.size(); ++i)
        ck.add(std::fabs(m1.p[i] - m2.p[i]) / scale);
    }
  }
  return finish("momentum-classical", ck, 1e-9);
}

GroupResult group_variation(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 16);
  Check ck;
  {
    Lagrangian L = lagrangian_harmonic(1);
    CurveEvaluator sine{1, [](const JetScalar& t) {
                          return std::vector<JetScalar>{jet_sin(t)};
                        }};
    CurveEvaluator bump{1, [](const JetScalar& t) {
                          return std::vector<JetScalar>{t * t};
                        }};
    ck.add(rel3(boundary_pairing(L, {sine, bump}, 0.7), std::cos(0.7) * 0.49));
    ActionVariationReport rep = action_variation(L, {sine, bump}, 0.0, 0.8);
    ck.add(rep.converged ? 0.0 : 1.0);
    ck.add(std::fabs(rep.lhs - rep.rhs) /
           std::max({1.0, std::fabs(rep.lhs), std::fabs(rep.rhs)}));
  }
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 6; ++trial) {
      const int dim = 1 + rng.below(2);
      Lagrangian L = random_poly_lagrangian(rng, dim, k);
      VariationField var{random_poly_curve(rng, dim, 2 * k + 2),
                         random_poly_curve(rng, dim, 2 * k + 2)};
      const double t = 0.3 * rng.symmetric();
      PointwiseVariation pv = variation_pointwise(L, var, t);
      const double scale = std::max({1.0, std::fabs(pv.dl_pairing), std::fabs(pv.force_pairing),
                                     std::fabs(pv.boundary_rate)});
      ck.add(std::fabs(pv.dl_pairing - pv.force_pairing - pv.boundary_rate) / scale);
    }
  }
  return finish("variation-pointwise", ck, 1e-9);
}

GroupResult group_semiholonomic(std::uint64_t seed, int max_k) {
  SplitMix64 rng(seed * 1000 + 17);
  Check ck;
  for (int k = 1; k <= max_k; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      const int dim = 1 + rng.below(2);
      const int fd = 1 + rng.below(3);
      SemiHolonomicElement phi = random_semi(rng, k, dim, fd);
      const int m = rng.below(k + 1);
      const int n = rng.below(k + 1);
      SemiHolonomicSlice slice = project_semi(phi, m, n);
      for (int i = 0; i < fd; ++i)
        for (int b = 0; b <= m; ++b)
          for (int g = 0; g <= n; ++g)
            ck.add(std::fabs(slice.fiber_at(i, b, g) - phi.fiber_at(i, b, g)));
      for (int a = 0; a < dim; ++a)
        for (int mu = 0; mu <= m + n; ++mu)
          ck.add(std::fabs(slice.base[static_cast<std::size_t>(a * (m + n + 1) + mu)] -
                           phi.base_at(a, mu)));
      // a holonomic element: the boundary-momentum map restricts to the
      // plain jet truncation and the contraction vanishes on it
      SemiHolonomicElement hol = phi;
      std::vector<std::vector<double>> jets;
      for (int i = 0; i < fd; ++i) {
        jets.push_back(random_vec(rng, 2 * k + 1));
        for (int b = 0; b <= k; ++b)
          for (int g = 0; g <= k; ++g) hol.fiber_at(i, b, g) = jets.back()[static_cast<std::size_t>(b + g)];
      }
      auto mu_h = momenta(hol);
      for (int i = 0; i < fd; ++i)
        for (int a = 0; a <= k; ++a)
          ck.add(rel3(mu_h.fiber[static_cast<std::size_t>(i * (k + 1) + a)],
                      jets[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]));
      // holonomy membership for velocities
      HigherVelocity v;
      v.dim = dim;
      for (int a = 0; a < dim; ++a) v.coords.push_back(random_jet(rng, JetShape({k})));
      JetShape ones(std::vector<int>(static_cast<std::size_t>(k), 1));
      HigherVelocity inc = holonomic_include(v, ones);
      ck.add(is_holonomic(inc) ? 0.0 : 1.0);
      HigherVelocity back = merge_velocity(inc);
      for (int a = 0; a < dim; ++a)
        ck.add(scaled_diff(back.coords[static_cast<std::size_t>(a)],
                           v.coords[static_cast<std::size_t>(a)]));
    }
  }
  return finish("semiholonomic-structure", ck, 1e-12);
}

}  // namespace

VerificationReport run_verification(std::uint64_t seed, int max_k) {
  if (max_k < 1) max_k = 1;
  if (max_k > 3) max_k = 3;
  VerificationReport rep;
  auto push = [&rep](GroupResult r) {
    rep.all_pass = rep.all_pass && r.pass;
    rep.groups.push_back(std::move(r));
  };
  push(group_ring(seed));
  push(group_elementary(seed));
  push(group_lifts(seed));
  push(group_merge_split(seed));
  push(group_alpha_lift(seed));
  push(group_pairings(seed, max_k));
  push(group_kappa_eps(seed, max_k));
  push(group_projection(seed, max_k));
  push(group_upsilon(seed, max_k));
  push(group_momenta_recurrence(seed, max_k));
  push(group_int_by_parts(seed, max_k));
  push(group_two_stage(seed, max_k));
  push(group_functoriality(seed, max_k));
  push(group_force(seed, max_k));
  push(group_momentum(seed, max_k));
  push(group_variation(seed, max_k));
  push(group_semiholonomic(seed, max_k));
  return rep;
}

}  // namespace jetvar
