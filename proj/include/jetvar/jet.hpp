#pragma once

#include <span>
#include <string>
#include <vector>

#include "jetvar/errors.hpp"

namespace jetvar {

/// Truncation shape (n_1, ..., n_r): one nilpotency order per generator.
/// Coefficient arrays are indexed by multi-exponents e with 0 <= e_j <= n_j;
/// the first slot varies fastest (stride 1), so for shape (1,1) the order is
/// (0,0), (1,0), (0,1), (1,1).
class JetShape {
 public:
  JetShape() = default;  // rank 0: plain scalars
  explicit JetShape(std::vector<int> orders);

  int rank() const { return static_cast<int>(orders_.size()); }
  int order(int slot) const { return orders_[static_cast<std::size_t>(slot)]; }
  const std::vector<int>& orders() const { return orders_; }
  int coeff_count() const { return count_; }
  int stride(int slot) const { return strides_[static_cast<std::size_t>(slot)]; }
  int total_order() const;

  int index_of(std::span<const int> exps) const;
  void exps_of(int index, std::span<int> out) const;

  bool operator==(const JetShape& o) const { return orders_ == o.orders_; }
  bool operator!=(const JetShape& o) const { return !(*this == o); }

  std::string describe() const;

 private:
  std::vector<int> orders_;
  std::vector<int> strides_;
  int count_ = 1;
};

/// Element of the truncated polynomial ring R[v_1..v_r]/(v_j^{n_j+1}).
/// Coefficients are stored derivative-style: the entry at exponent e is the
/// e-th partial derivative of the represented function at the base point,
/// NOT divided by e!.  Multiplication is therefore the Leibniz-weighted
/// truncated convolution
///   (a*b)[e] = sum_{d <= e} prod_j C(e_j, d_j) a[d] b[e-d].
class JetScalar {
 public:
  JetScalar() : shape_(), c_(1, 0.0) {}
  explicit JetScalar(double value) : shape_(), c_(1, value) {}
  explicit JetScalar(JetShape shape);
  JetScalar(JetShape shape, std::vector<double> coeffs);

  /// Constant jet of the given shape.
  static JetScalar constant(const JetShape& shape, double value);

  const JetShape& shape() const { return shape_; }
  double value() const { return c_[0]; }
  double coeff(int index) const { return c_[static_cast<std::size_t>(index)]; }
  double& coeff(int index) { return c_[static_cast<std::size_t>(index)]; }
  const std::vector<double>& coeffs() const { return c_; }

  double max_abs_coeff() const;

  JetScalar& operator+=(const JetScalar& o);
  JetScalar& operator-=(const JetScalar& o);
  JetScalar& operator+=(double s) { c_[0] += s; return *this; }
  JetScalar& operator-=(double s) { c_[0] -= s; return *this; }
  JetScalar& operator*=(double s);

  friend JetScalar operator+(JetScalar a, const JetScalar& b) { return a += b; }
  friend JetScalar operator-(JetScalar a, const JetScalar& b) { return a -= b; }
  friend JetScalar operator+(JetScalar a, double s) { return a += s; }
  friend JetScalar operator+(double s, JetScalar a) { return a += s; }
  friend JetScalar operator-(JetScalar a, double s) { return a -= s; }
  friend JetScalar operator-(double s, const JetScalar& a);
  friend JetScalar operator*(JetScalar a, double s) { return a *= s; }
  friend JetScalar operator*(double s, JetScalar a) { return a *= s; }
  friend JetScalar operator/(JetScalar a, double s) { return a *= (1.0 / s); }
  friend JetScalar operator-(const JetScalar& a);

  friend JetScalar operator*(const JetScalar& a, const JetScalar& b);
  friend JetScalar operator/(const JetScalar& a, const JetScalar& b);
  friend JetScalar operator/(double s, const JetScalar& b);

 private:
  JetShape shape_;
  std::vector<double> c_;
};

/// One coordinate seed: constant + v_gen (derivative-style coefficient 1 at
/// the unit exponent of the chosen generator).  A rank-0 shape degenerates to
/// the plain constant and ignores the generator index.
JetScalar seed_variable(const JetShape& shape, double constant, int generator = 0);

enum class Elementary { Exp, Log, Sin, Cos, Sqrt, Pow, Atan };

/// Composition with an elementary analytic function (`power` is the exponent
/// for Elementary::Pow).  Pow with a non-negative integer exponent reduces to
/// repeated multiplication and has no domain restriction; otherwise the
/// constant term must be admissible for the function's derivative series.
JetScalar lift_univariate(Elementary f, const JetScalar& a, double power = 0.0);

JetScalar jet_exp(const JetScalar& a);
JetScalar jet_log(const JetScalar& a);
JetScalar jet_sin(const JetScalar& a);
JetScalar jet_cos(const JetScalar& a);
JetScalar jet_sqrt(const JetScalar& a);
JetScalar jet_atan(const JetScalar& a);
JetScalar jet_pow(const JetScalar& a, double power);

/// Integer power by repeated multiplication (n >= 0).
JetScalar jet_powi(const JetScalar& a, int n);

/// True when every coefficient depends on its total degree only, up to
/// `tol * (1 + max |coeff|)`.
bool is_symmetric(const JetScalar& a, double tol = 1e-12);

/// Collapse a totally symmetric multi-generator jet to the single-generator
/// shape (sum of orders).  Throws HolonomyError when the input is not
/// symmetric within tolerance.
JetScalar merge_slots(const JetScalar& a, double tol = 1e-12);

/// Right inverse of merge_slots: distribute a single-generator jet over a
/// multi-generator shape whose orders sum to the source order, by total
/// degree.
JetScalar split_slots(const JetScalar& a, const JetShape& target);

/// Swap the two generators of a rank-2 jet: coefficient (i, j) moves to
/// position (j, i) of the transposed shape.
JetScalar transpose_slots(const JetScalar& a);

/// Append extra generators (new slots are slowest-varying; existing
/// coefficients land at extra-exponent zero).
JetScalar extend_slots(const JetScalar& a, const std::vector<int>& extra);

/// Remove one generator, keeping the coefficients at the given exponent of
/// that slot.  Derivative-style storage means exponent m yields the m-th
/// derivative along that generator, with no factorial correction.
JetScalar extract_slot(const JetScalar& a, int slot, int exponent);

/// Derivative along one generator: shifts that slot's exponents down by one
/// and lowers its order by one.
JetScalar derive_slot(const JetScalar& a, int slot);

/// Truncate one slot to a lower order.
JetScalar truncate_slot(const JetScalar& a, int slot, int new_order);

}  // namespace jetvar
