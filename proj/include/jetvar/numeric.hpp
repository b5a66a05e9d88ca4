#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace jetvar {

/// Exact binomial coefficient, n <= 32 (fits in 64 bits with room to spare).
std::int64_t binom_exact(int n, int k);

/// Binomial coefficient as a double, same range.
double binom(int n, int k);

/// Counter-style 64-bit generator (SplitMix64).  One seed determines the
/// whole stream; identical across platforms because only integer ops and a
/// single multiply-by-2^-53 are involved.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1].
  double symmetric() { return 2.0 * uniform() - 1.0; }

  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// A is row-major n x n, b holds m right-hand sides column-blocked as
/// b[i*m + j].  Returns false when a pivot falls below tol * row scale.
bool solve_linear(std::vector<double> a, std::vector<double> b, int n, int m,
                  std::vector<double>& out, double tol = 1e-14);

/// Determinant via LU with partial pivoting.
double determinant(std::vector<double> a, int n);

/// Composite Gauss-Legendre quadrature, 5 nodes per panel.
double integrate_gl5(const std::function<double(double)>& f, double a, double b,
                     int panels);

}  // namespace jetvar
