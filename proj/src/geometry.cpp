#include "jetvar/geometry.hpp"

#include <cmath>
#include <utility>

#include "jetvar/numeric.hpp"

namespace jetvar {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Gauss-Jordan inverse of a jet-valued matrix, pivoting on the magnitude of
/// the constant terms.
std::vector<JetScalar> invert_jet_matrix(std::vector<JetScalar> m, int n) {
  const JetShape shape = m[0].shape();
  std::vector<JetScalar> inv(static_cast<std::size_t>(n) * n, JetScalar(shape));
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)].coeff(0) = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(m[static_cast<std::size_t>(r * n + col)].value()) >
          std::fabs(m[static_cast<std::size_t>(pivot * n + col)].value()))
        pivot = r;
    if (std::fabs(m[static_cast<std::size_t>(pivot * n + col)].value()) < 1e-12)
      throw SingularityError("metric matrix is singular");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(m[static_cast<std::size_t>(pivot * n + c)],
                  m[static_cast<std::size_t>(col * n + c)]);
        std::swap(inv[static_cast<std::size_t>(pivot * n + c)],
                  inv[static_cast<std::size_t>(col * n + c)]);
      }
    const JetScalar diag = m[static_cast<std::size_t>(col * n + col)];
    for (int c = 0; c < n; ++c) {
      m[static_cast<std::size_t>(col * n + c)] =
          m[static_cast<std::size_t>(col * n + c)] / diag;
      inv[static_cast<std::size_t>(col * n + c)] =
          inv[static_cast<std::size_t>(col * n + c)] / diag;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const JetScalar f = m[static_cast<std::size_t>(r * n + col)];
      for (int c = 0; c < n; ++c) {
        m[static_cast<std::size_t>(r * n + c)] -=
            f * m[static_cast<std::size_t>(col * n + c)];
        inv[static_cast<std::size_t>(r * n + c)] -=
            f * inv[static_cast<std::size_t>(col * n + c)];
      }
    }
  }
  return inv;
}

int gamma_index(int dim, int c, int a, int b) { return (c * dim + a) * dim + b; }

}  // namespace

MetricField metric_euclidean(int dim) {
  MetricField g;
  g.dim = dim;
  g.eval = [dim](const std::vector<JetScalar>& x) {
    std::vector<JetScalar> out(static_cast<std::size_t>(dim) * dim, JetScalar(x[0].shape()));
    for (int a = 0; a < dim; ++a) out[static_cast<std::size_t>(a * dim + a)].coeff(0) = 1.0;
    return out;
  };
  return g;
}

MetricField metric_sphere2() {
  MetricField g;
  g.dim = 2;
  g.eval = [](const std::vector<JetScalar>& x) {
    const double theta = x[0].value();
    if (theta < 0.1 || theta > kPi - 0.1)
      throw DomainError("sphere chart: theta too close to a pole");
    std::vector<JetScalar> out(4, JetScalar(x[0].shape()));
    out[0].coeff(0) = 1.0;
    JetScalar s = jet_sin(x[0]);
    out[3] = s * s;
    return out;
  };
  return g;
}

MetricField metric_hyperbolic2() {
  MetricField g;
  g.dim = 2;
  g.eval = [](const std::vector<JetScalar>& x) {
    if (x[1].value() <= 0.0)
      throw DomainError("hyperbolic chart: requires y > 0");
    JetScalar f = 1.0 / (x[1] * x[1]);
    std::vector<JetScalar> out(4, JetScalar(x[0].shape()));
    out[0] = f;
    out[3] = f;
    return out;
  };
  return g;
}

std::vector<JetScalar> metric_components(const MetricField& g,
                                         const std::vector<JetScalar>& x) {
  const int dim = g.dim;
  if (static_cast<int>(x.size()) != dim)
    throw ShapeError("metric_components: wrong number of coordinates");
  std::vector<JetScalar> raw = g.eval(x);
  if (static_cast<int>(raw.size()) != dim * dim)
    throw ShapeError("metric evaluator returned wrong component count");
  std::vector<JetScalar> sym(raw.size());
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      sym[static_cast<std::size_t>(a * dim + b)] =
          0.5 * (raw[static_cast<std::size_t>(a * dim + b)] +
                 raw[static_cast<std::size_t>(b * dim + a)]);
  std::vector<double> vals(sym.size());
  for (std::size_t i = 0; i < sym.size(); ++i) vals[i] = sym[i].value();
  for (int p = 1; p <= dim; ++p) {
    std::vector<double> minor(static_cast<std::size_t>(p) * p);
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        minor[static_cast<std::size_t>(a * p + b)] = vals[static_cast<std::size_t>(a * dim + b)];
    if (determinant(minor, p) <= 0.0)
      throw DomainError("metric is not positive definite at the evaluation point");
  }
  return sym;
}

std::vector<JetScalar> christoffel_jets(const MetricField& g,
                                        const std::vector<JetScalar>& x) {
  const int dim = g.dim;
  std::vector<JetScalar> g0 = metric_components(g, x);
  const int seed_slot = x[0].shape().rank();
  const int seed_coeff = x[0].shape().coeff_count();

  // dg[r][a*dim+b] = d_r g_{ab}
  std::vector<std::vector<JetScalar>> dg(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) {
    std::vector<JetScalar> xr(x.size());
    for (int a = 0; a < dim; ++a) xr[static_cast<std::size_t>(a)] = extend_slots(x[static_cast<std::size_t>(a)], {1});
    xr[static_cast<std::size_t>(r)].coeff(seed_coeff) += 1.0;
    std::vector<JetScalar> gr = metric_components(g, xr);
    dg[static_cast<std::size_t>(r)].resize(gr.size());
    for (std::size_t i = 0; i < gr.size(); ++i)
      dg[static_cast<std::size_t>(r)][i] = extract_slot(gr[i], seed_slot, 1);
  }

  std::vector<JetScalar> ginv = invert_jet_matrix(g0, dim);
  std::vector<JetScalar> gamma(static_cast<std::size_t>(dim) * dim * dim,
                               JetScalar(x[0].shape()));
  for (int c = 0; c < dim; ++c)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        JetScalar acc(x[0].shape());
        for (int d = 0; d < dim; ++d)
          acc += ginv[static_cast<std::size_t>(c * dim + d)] *
                 (dg[static_cast<std::size_t>(a)][static_cast<std::size_t>(d * dim + b)] +
                  dg[static_cast<std::size_t>(b)][static_cast<std::size_t>(d * dim + a)] -
                  dg[static_cast<std::size_t>(d)][static_cast<std::size_t>(a * dim + b)]);
        gamma[static_cast<std::size_t>(gamma_index(dim, c, a, b))] = 0.5 * acc;
      }
  return gamma;
}

std::vector<double> christoffel(const MetricField& g, const std::vector<double>& x) {
  std::vector<JetScalar> xj;
  xj.reserve(x.size());
  for (double v : x) xj.emplace_back(v);
  std::vector<JetScalar> gj = christoffel_jets(g, xj);
  std::vector<double> out(gj.size());
  for (std::size_t i = 0; i < gj.size(); ++i) out[i] = gj[i].value();
  return out;
}

CurvatureResult curvature(const MetricField& g, const std::vector<double>& x) {
  const int dim = g.dim;
  std::vector<double> gam(static_cast<std::size_t>(dim) * dim * dim);
  // dgam[r][idx] = d_r Gamma^c_{ab}
  std::vector<std::vector<double>> dgam(static_cast<std::size_t>(dim));
  for (int r = 0; r < dim; ++r) {
    std::vector<JetScalar> xj;
    xj.reserve(x.size());
    for (double v : x) xj.push_back(extend_slots(JetScalar(v), {1}));
    xj[static_cast<std::size_t>(r)].coeff(1) += 1.0;
    std::vector<JetScalar> gj = christoffel_jets(g, xj);
    dgam[static_cast<std::size_t>(r)].resize(gj.size());
    for (std::size_t i = 0; i < gj.size(); ++i) {
      dgam[static_cast<std::size_t>(r)][i] = gj[i].coeff(1);
      if (r == 0) gam[i] = gj[i].value();
    }
  }

  CurvatureResult res;
  res.dim = dim;
  res.up.assign(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0);
  res.low.assign(res.up.size(), 0.0);
  auto up_idx = [dim](int d, int c, int a, int b) {
    return static_cast<std::size_t>(((d * dim + c) * dim + a) * dim + b);
  };
  for (int d = 0; d < dim; ++d)
    for (int c = 0; c < dim; ++c)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          double v = dgam[static_cast<std::size_t>(a)]
                         [static_cast<std::size_t>(gamma_index(dim, d, b, c))] -
                     dgam[static_cast<std::size_t>(b)]
                         [static_cast<std::size_t>(gamma_index(dim, d, a, c))];
          for (int e = 0; e < dim; ++e)
            v += gam[static_cast<std::size_t>(gamma_index(dim, d, a, e))] *
                     gam[static_cast<std::size_t>(gamma_index(dim, e, b, c))] -
                 gam[static_cast<std::size_t>(gamma_index(dim, d, b, e))] *
                     gam[static_cast<std::size_t>(gamma_index(dim, e, a, c))];
          res.up[up_idx(d, c, a, b)] = v;
        }

  std::vector<JetScalar> xj;
  xj.reserve(x.size());
  for (double v : x) xj.emplace_back(v);
  std::vector<JetScalar> gj = metric_components(g, xj);
  double scale = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d) {
          double v = 0.0;
          for (int e = 0; e < dim; ++e)
            v += gj[static_cast<std::size_t>(a * dim + e)].value() * res.up[up_idx(e, b, c, d)];
          res.low[up_idx(a, b, c, d)] = v;
          scale = std::max(scale, std::fabs(v));
        }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        for (int d = 0; d < dim; ++d)
          if (std::fabs(res.low[up_idx(a, b, c, d)] - res.low[up_idx(c, d, a, b)]) >
              1e-8 * (1.0 + scale))
            throw Error("curvature pair symmetry violated");
  return res;
}

std::vector<double> curvature_apply(const CurvatureResult& r, const std::vector<double>& x_vec,
                                    const std::vector<double>& y_vec,
                                    const std::vector<double>& z_vec) {
  const int dim = r.dim;
  std::vector<double> out(static_cast<std::size_t>(dim), 0.0);
  for (int d = 0; d < dim; ++d)
    for (int c = 0; c < dim; ++c)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          out[static_cast<std::size_t>(d)] +=
              r.up[static_cast<std::size_t>(((d * dim + c) * dim + a) * dim + b)] *
              x_vec[static_cast<std::size_t>(a)] * y_vec[static_cast<std::size_t>(b)] *
              z_vec[static_cast<std::size_t>(c)];
  return out;
}

std::vector<double> covariant_fold(const MetricField& g,
                                   const std::vector<JetScalar>& gamma_jets,
                                   const std::vector<JetScalar>& w) {
  const int dim = g.dim;
  const int m = w[0].shape().order(0);
  std::vector<JetScalar> cur = w;
  for (int r = m; r >= 1; --r) {
    std::vector<JetScalar> gj_r(static_cast<std::size_t>(dim));
    std::vector<JetScalar> gdot(static_cast<std::size_t>(dim));
    std::vector<JetScalar> w_r(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      gj_r[static_cast<std::size_t>(a)] =
          truncate_slot(gamma_jets[static_cast<std::size_t>(a)], 0, r - 1);
      gdot[static_cast<std::size_t>(a)] =
          truncate_slot(derive_slot(gamma_jets[static_cast<std::size_t>(a)], 0), 0, r - 1);
      w_r[static_cast<std::size_t>(a)] =
          truncate_slot(cur[static_cast<std::size_t>(a)], 0, r - 1);
    }
    std::vector<JetScalar> gamma = christoffel_jets(g, gj_r);
    std::vector<JetScalar> next(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
      JetScalar acc = derive_slot(cur[static_cast<std::size_t>(c)], 0);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          acc += gamma[static_cast<std::size_t>(gamma_index(dim, c, a, b))] *
                 gdot[static_cast<std::size_t>(a)] * w_r[static_cast<std::size_t>(b)];
      next[static_cast<std::size_t>(c)] = std::move(acc);
    }
    cur = std::move(next);
  }
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) out[static_cast<std::size_t>(a)] = cur[static_cast<std::size_t>(a)].value();
  return out;
}

std::vector<double> covariant_derivative_along(const MetricField& g,
                                               const CurveEvaluator& gamma,
                                               const CurveEvaluator& v_field, double t,
                                               int m) {
  if (m < 0) throw ShapeError("covariant_derivative_along: negative order");
  HigherVelocity gj = curve_jet(gamma, JetScalar(t), m);
  HigherVelocity vj = curve_jet(v_field, JetScalar(t), m);
  if (m == 0) {
    std::vector<double> out(vj.coords.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = vj.coords[i].value();
    return out;
  }
  return covariant_fold(g, gj.coords, vj.coords);
}

Lagrangian cubic_lagrangian(const MetricField& g) {
  Lagrangian L;
  L.dim = g.dim;
  L.k = 2;
  L.eval = [g](const std::vector<JetScalar>& args) {
    const int dim = g.dim;
    std::vector<JetScalar> x(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) x[static_cast<std::size_t>(a)] = args[static_cast<std::size_t>(3 * a)];
    std::vector<JetScalar> gamma = christoffel_jets(g, x);
    std::vector<JetScalar> acc(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
      JetScalar s = args[static_cast<std::size_t>(3 * c + 2)];
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          s += gamma[static_cast<std::size_t>(gamma_index(dim, c, a, b))] *
               args[static_cast<std::size_t>(3 * a + 1)] *
               args[static_cast<std::size_t>(3 * b + 1)];
      acc[static_cast<std::size_t>(c)] = std::move(s);
    }
    std::vector<JetScalar> gm = metric_components(g, x);
    JetScalar out(args[0].shape());
    for (int c = 0; c < dim; ++c)
      for (int d = 0; d < dim; ++d)
        out += gm[static_cast<std::size_t>(c * dim + d)] * acc[static_cast<std::size_t>(c)] *
               acc[static_cast<std::size_t>(d)];
    return out;
  };
  return L;
}

std::vector<double> cubic_el_residual(const MetricField& g, const CurveEvaluator& gamma,
                                      double t) {
  const int dim = g.dim;
  HigherVelocity gj4 = curve_jet(gamma, JetScalar(t), 4);
  std::vector<JetScalar> gj3(static_cast<std::size_t>(dim));
  std::vector<JetScalar> w3(static_cast<std::size_t>(dim));
  std::vector<JetScalar> gj1(static_cast<std::size_t>(dim));
  std::vector<JetScalar> w1(static_cast<std::size_t>(dim));
  std::vector<double> x(static_cast<std::size_t>(dim));
  std::vector<double> xdot(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    const JetScalar& c4 = gj4.coords[static_cast<std::size_t>(a)];
    JetScalar dc = derive_slot(c4, 0);
    gj3[static_cast<std::size_t>(a)] = truncate_slot(c4, 0, 3);
    w3[static_cast<std::size_t>(a)] = dc;
    gj1[static_cast<std::size_t>(a)] = truncate_slot(c4, 0, 1);
    w1[static_cast<std::size_t>(a)] = truncate_slot(dc, 0, 1);
    x[static_cast<std::size_t>(a)] = c4.value();
    xdot[static_cast<std::size_t>(a)] = dc.value();
  }
  std::vector<double> d3 = covariant_fold(g, gj3, w3);
  std::vector<double> d1 = covariant_fold(g, gj1, w1);
  CurvatureResult r = curvature(g, x);
  std::vector<double> rterm = curvature_apply(r, d1, xdot, xdot);
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a)
    out[static_cast<std::size_t>(a)] = d3[static_cast<std::size_t>(a)] + rterm[static_cast<std::size_t>(a)];
  return out;
}

}  // namespace jetvar
