#include "jetvar/numeric.hpp"

#include <cmath>
#include <cstdlib>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

constexpr int kMaxBinomN = 32;

struct PascalTable {
  std::int64_t c[kMaxBinomN + 1][kMaxBinomN + 1] = {};
  PascalTable() {
    for (int n = 0; n <= kMaxBinomN; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k)
        c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const PascalTable& pascal() {
  static const PascalTable table;
  return table;
}

}  // namespace

std::int64_t binom_exact(int n, int k) {
  if (n < 0 || n > kMaxBinomN) throw ShapeError("binomial: n out of supported range");
  if (k < 0 || k > n) return 0;
  return pascal().c[n][k];
}

double binom(int n, int k) { return static_cast<double>(binom_exact(n, k)); }

bool solve_linear(std::vector<double> a, std::vector<double> b, int n, int m,
                  std::vector<double>& out, double tol) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::fabs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < tol) return false;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      for (int j = 0; j < m; ++j) std::swap(b[col * m + j], b[pivot * m + j]);
    }
    double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      for (int j = 0; j < m; ++j) b[r * m + j] -= f * b[col * m + j];
    }
  }
  out.assign(static_cast<std::size_t>(n) * m, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    for (int j = 0; j < m; ++j) {
      double s = b[row * m + j];
      for (int c = row + 1; c < n; ++c) s -= a[row * n + c] * out[c * m + j];
      out[row * m + j] = s / a[row * n + row];
    }
  }
  return true;
}

double determinant(std::vector<double> a, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::fabs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      det = -det;
    }
    det *= a[col * n + col];
    double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  return det;
}

double integrate_gl5(const std::function<double(double)>& f, double a, double b,
                     int panels) {
  if (panels < 1) throw ShapeError("quadrature: panel count must be positive");
  // 5-point Gauss-Legendre nodes/weights on [-1, 1].
  static const double node[5] = {-0.90617984593866399280, -0.53846931010568309104,
                                 0.0, 0.53846931010568309104,
                                 0.90617984593866399280};
  static const double weight[5] = {0.23692688505618908751, 0.47862867049936646804,
                                   0.56888888888888888889, 0.47862867049936646804,
                                   0.23692688505618908751};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (int i = 0; i < 5; ++i) panel += weight[i] * f(mid + half * node[i]);
    total += panel * half;
  }
  return total;
}

}  // namespace jetvar
