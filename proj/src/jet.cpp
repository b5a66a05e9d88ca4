#include "jetvar/jet.hpp"

#include <cmath>
#include <sstream>

#include "jetvar/numeric.hpp"

namespace jetvar {

namespace {

constexpr int kMaxSlotOrder = 32;
constexpr int kMaxCoeffCount = 4096;

void check_same_shape(const JetShape& a, const JetShape& b, const char* op) {
  if (a != b)
    throw ShapeError(std::string(op) + ": shape mismatch " + a.describe() +
                     " vs " + b.describe());
}

}  // namespace

JetShape::JetShape(std::vector<int> orders) : orders_(std::move(orders)) {
  strides_.resize(orders_.size());
  long long count = 1;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    if (orders_[j] < 0 || orders_[j] > kMaxSlotOrder)
      throw ShapeError("shape order out of range: " + std::to_string(orders_[j]));
    strides_[j] = static_cast<int>(count);
    count *= orders_[j] + 1;
    if (count > kMaxCoeffCount)
      throw ShapeError("shape exceeds coefficient budget of 4096");
  }
  count_ = static_cast<int>(count);
}

int JetShape::total_order() const {
  int t = 0;
  for (int n : orders_) t += n;
  return t;
}

int JetShape::index_of(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != rank())
    throw ShapeError("exponent tuple has wrong rank");
  int idx = 0;
  for (int j = 0; j < rank(); ++j) {
    if (exps[j] < 0 || exps[j] > orders_[static_cast<std::size_t>(j)])
      throw ShapeError("exponent out of range for slot " + std::to_string(j));
    idx += exps[j] * strides_[static_cast<std::size_t>(j)];
  }
  return idx;
}

void JetShape::exps_of(int index, std::span<int> out) const {
  for (int j = 0; j < rank(); ++j) {
    out[j] = (index / strides_[static_cast<std::size_t>(j)]) %
             (orders_[static_cast<std::size_t>(j)] + 1);
  }
}

std::string JetShape::describe() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    if (j) os << ',';
    os << orders_[j];
  }
  os << ')';
  return os.str();
}

JetScalar::JetScalar(JetShape shape)
    : shape_(std::move(shape)), c_(static_cast<std::size_t>(shape_.coeff_count()), 0.0) {}

JetScalar::JetScalar(JetShape shape, std::vector<double> coeffs)
    : shape_(std::move(shape)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != shape_.coeff_count())
    throw ShapeError("coefficient array does not match shape " + shape_.describe());
}

JetScalar JetScalar::constant(const JetShape& shape, double value) {
  JetScalar r(shape);
  r.c_[0] = value;
  return r;
}

double JetScalar::max_abs_coeff() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::fabs(v));
  return m;
}

JetScalar& JetScalar::operator+=(const JetScalar& o) {
  check_same_shape(shape_, o.shape_, "add");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

JetScalar& JetScalar::operator-=(const JetScalar& o) {
  check_same_shape(shape_, o.shape_, "subtract");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

JetScalar& JetScalar::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

JetScalar operator-(double s, const JetScalar& a) {
  JetScalar r = -a;
  r += s;
  return r;
}

JetScalar operator-(const JetScalar& a) {
  JetScalar r = a;
  r *= -1.0;
  return r;
}

JetScalar operator*(const JetScalar& a, const JetScalar& b) {
  check_same_shape(a.shape_, b.shape_, "multiply");
  const JetShape& s = a.shape_;
  const int r = s.rank();
  const int n = s.coeff_count();
  JetScalar out(s);
  std::vector<int> ea(static_cast<std::size_t>(r)), eb(static_cast<std::size_t>(r));
  for (int ia = 0; ia < n; ++ia) {
    const double va = a.c_[static_cast<std::size_t>(ia)];
    if (va == 0.0) continue;
    s.exps_of(ia, ea);
    for (int ib = 0; ib < n; ++ib) {
      const double vb = b.c_[static_cast<std::size_t>(ib)];
      if (vb == 0.0) continue;
      s.exps_of(ib, eb);
      int target = 0;
      double weight = 1.0;
      bool fits = true;
      for (int j = 0; j < r; ++j) {
        const int e = ea[static_cast<std::size_t>(j)] + eb[static_cast<std::size_t>(j)];
        if (e > s.order(j)) {
          fits = false;
          break;
        }
        target += e * s.stride(j);
        weight *= binom(e, ea[static_cast<std::size_t>(j)]);
      }
      if (fits) out.c_[static_cast<std::size_t>(target)] += weight * va * vb;
    }
  }
  return out;
}

namespace {

/// Composes a derivative sequence c_m = f^{(m)}(a_0) with the nilpotent part
/// of `a`:  f(a) = sum_m c_m / m! * (a - a_0)^m, truncated automatically by
/// nilpotency.  `derivs[m]` holds f^{(m)}(a_0) for m = 0..total_order.
JetScalar compose_series(const JetScalar& a, const std::vector<double>& derivs) {
  const int order = a.shape().total_order();
  JetScalar nil = a;
  nil.coeff(0) = 0.0;
  // Horner evaluation in the truncated ring.
  JetScalar acc = JetScalar::constant(a.shape(), 0.0);
  double factorial = 1.0;
  for (int m = 2; m <= order; ++m) factorial *= m;
  for (int m = order; m >= 0; --m) {
    const double cm = derivs[static_cast<std::size_t>(m)] / factorial;
    if (m >= 1) factorial /= m;
    if (m == order) {
      acc = JetScalar::constant(a.shape(), cm);
    } else {
      acc = acc * nil;
      acc += cm;
    }
  }
  return acc;
}

std::vector<double> derivs_exp(double x, int order) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1, std::exp(x));
  return d;
}

std::vector<double> derivs_log(double x, int order) {
  if (x <= 0.0) throw SingularityError("log: constant term must be positive");
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  d[0] = std::log(x);
  double inv = 1.0 / x;
  double cur = inv;  // first derivative
  for (int m = 1; m <= order; ++m) {
    d[static_cast<std::size_t>(m)] = cur;
    cur *= -static_cast<double>(m) * inv;
  }
  return d;
}

std::vector<double> derivs_sin(double x, int order) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  const double table[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
  for (int m = 0; m <= order; ++m) d[static_cast<std::size_t>(m)] = table[m % 4];
  return d;
}

std::vector<double> derivs_cos(double x, int order) {
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  const double table[4] = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
  for (int m = 0; m <= order; ++m) d[static_cast<std::size_t>(m)] = table[m % 4];
  return d;
}

std::vector<double> derivs_pow(double x, double p, int order) {
  if (x <= 0.0)
    throw SingularityError("pow: constant term must be positive for non-integer exponents");
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  double coeff = 1.0;  // falling factorial p (p-1) ... (p-m+1)
  for (int m = 0; m <= order; ++m) {
    d[static_cast<std::size_t>(m)] = coeff * std::pow(x, p - m);
    coeff *= (p - m);
  }
  return d;
}

std::vector<double> derivs_atan(double x, int order) {
  // (1+x^2) y' = 1, differentiated m times:
  //   (1+x^2) y^{(m+1)} + 2xm y^{(m)} + m(m-1) y^{(m-1)} = 0.
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  d[0] = std::atan(x);
  if (order == 0) return d;
  const double q = 1.0 + x * x;
  d[1] = 1.0 / q;
  for (int m = 1; m < order; ++m) {
    d[static_cast<std::size_t>(m) + 1] =
        -(2.0 * x * m * d[static_cast<std::size_t>(m)] +
          static_cast<double>(m) * (m - 1) * d[static_cast<std::size_t>(m) - 1]) /
        q;
  }
  return d;
}

}  // namespace

JetScalar lift_univariate(Elementary f, const JetScalar& a, double power) {
  const int order = a.shape().total_order();
  const double x = a.value();
  switch (f) {
    case Elementary::Exp: return compose_series(a, derivs_exp(x, order));
    case Elementary::Log: return compose_series(a, derivs_log(x, order));
    case Elementary::Sin: return compose_series(a, derivs_sin(x, order));
    case Elementary::Cos: return compose_series(a, derivs_cos(x, order));
    case Elementary::Sqrt: return compose_series(a, derivs_pow(x, 0.5, order));
    case Elementary::Atan: return compose_series(a, derivs_atan(x, order));
    case Elementary::Pow: {
      const double rounded = std::nearbyint(power);
      if (rounded == power && rounded >= 0.0 && rounded <= 64.0)
        return jet_powi(a, static_cast<int>(rounded));
      return compose_series(a, derivs_pow(x, power, order));
    }
  }
  throw ShapeError("lift_univariate: unknown function");
}

JetScalar jet_exp(const JetScalar& a) { return lift_univariate(Elementary::Exp, a); }
JetScalar jet_log(const JetScalar& a) { return lift_univariate(Elementary::Log, a); }
JetScalar jet_sin(const JetScalar& a) { return lift_univariate(Elementary::Sin, a); }
JetScalar jet_cos(const JetScalar& a) { return lift_univariate(Elementary::Cos, a); }
JetScalar jet_sqrt(const JetScalar& a) { return lift_univariate(Elementary::Sqrt, a); }
JetScalar jet_atan(const JetScalar& a) { return lift_univariate(Elementary::Atan, a); }
JetScalar jet_pow(const JetScalar& a, double power) {
  return lift_univariate(Elementary::Pow, a, power);
}

JetScalar jet_powi(const JetScalar& a, int n) {
  if (n < 0) throw ShapeError("jet_powi: exponent must be non-negative");
  JetScalar result = JetScalar::constant(a.shape(), 1.0);
  JetScalar base = a;
  int e = n;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

JetScalar operator/(const JetScalar& a, const JetScalar& b) {
  check_same_shape(a.shape(), b.shape(), "divide");
  return a * (1.0 / b);
}

JetScalar operator/(double s, const JetScalar& b) {
  const double x = b.value();
  if (x == 0.0) throw SingularityError("divide: constant term of divisor is zero");
  const int order = b.shape().total_order();
  // derivatives of 1/x: (-1)^m m! x^{-m-1}
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  double cur = 1.0 / x;
  for (int m = 0; m <= order; ++m) {
    d[static_cast<std::size_t>(m)] = cur;
    cur *= -static_cast<double>(m + 1) / x;
  }
  JetScalar inv = compose_series(b, d);
  inv *= s;
  return inv;
}

JetScalar seed_variable(const JetShape& shape, double constant, int generator) {
  JetScalar r(shape);
  r.coeff(0) = constant;
  if (shape.rank() == 0) return r;  // degenerate scalar seed
  if (generator < 0 || generator >= shape.rank())
    throw ShapeError("seed_variable: generator index out of range");
  if (shape.order(generator) >= 1) r.coeff(shape.stride(generator)) = 1.0;
  return r;
}

bool is_symmetric(const JetScalar& a, double tol) {
  const JetShape& s = a.shape();
  const int n = s.coeff_count();
  const double scale = 1.0 + a.max_abs_coeff();
  std::vector<int> exps(static_cast<std::size_t>(s.rank()));
  const int total = s.total_order();
  std::vector<double> ref(static_cast<std::size_t>(total) + 1, 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(total) + 1, false);
  for (int i = 0; i < n; ++i) {
    s.exps_of(i, exps);
    int deg = 0;
    for (int e : exps) deg += e;
    const double v = a.coeff(i);
    if (!seen[static_cast<std::size_t>(deg)]) {
      seen[static_cast<std::size_t>(deg)] = true;
      ref[static_cast<std::size_t>(deg)] = v;
    } else if (std::fabs(v - ref[static_cast<std::size_t>(deg)]) / scale > tol) {
      return false;
    }
  }
  return true;
}

JetScalar merge_slots(const JetScalar& a, double tol) {
  if (!is_symmetric(a, tol))
    throw HolonomyError("merge: coefficients are not symmetric across generators");
  const JetShape& s = a.shape();
  const int total = s.total_order();
  JetScalar out{JetShape({total})};
  std::vector<int> exps(static_cast<std::size_t>(s.rank()));
  std::vector<bool> filled(static_cast<std::size_t>(total) + 1, false);
  for (int i = 0; i < s.coeff_count(); ++i) {
    s.exps_of(i, exps);
    int deg = 0;
    for (int e : exps) deg += e;
    if (!filled[static_cast<std::size_t>(deg)]) {
      filled[static_cast<std::size_t>(deg)] = true;
      out.coeff(deg) = a.coeff(i);
    }
  }
  return out;
}

JetScalar split_slots(const JetScalar& a, const JetShape& target) {
  if (a.shape().rank() != 1)
    throw ShapeError("split: source must have a single generator");
  if (target.total_order() != a.shape().order(0))
    throw ShapeError("split: target orders must sum to the source order");
  JetScalar out(target);
  std::vector<int> exps(static_cast<std::size_t>(target.rank()));
  for (int i = 0; i < target.coeff_count(); ++i) {
    target.exps_of(i, exps);
    int deg = 0;
    for (int e : exps) deg += e;
    out.coeff(i) = a.coeff(deg);
  }
  return out;
}

JetScalar transpose_slots(const JetScalar& a) {
  const JetShape& s = a.shape();
  if (s.rank() != 2) throw ShapeError("transpose: requires exactly two generators");
  JetShape t({s.order(1), s.order(0)});
  JetScalar out(t);
  for (int i = 0; i <= s.order(0); ++i)
    for (int j = 0; j <= s.order(1); ++j)
      out.coeff(j + (s.order(1) + 1) * i) = a.coeff(i + (s.order(0) + 1) * j);
  return out;
}

JetScalar extend_slots(const JetScalar& a, const std::vector<int>& extra) {
  std::vector<int> orders = a.shape().orders();
  orders.insert(orders.end(), extra.begin(), extra.end());
  JetScalar out{JetShape(std::move(orders))};
  // Appended slots are slowest-varying, so the old block is a prefix.
  for (int i = 0; i < a.shape().coeff_count(); ++i) out.coeff(i) = a.coeff(i);
  return out;
}

JetScalar extract_slot(const JetScalar& a, int slot, int exponent) {
  const JetShape& s = a.shape();
  if (slot < 0 || slot >= s.rank()) throw ShapeError("extract: slot out of range");
  if (exponent < 0 || exponent > s.order(slot))
    throw ShapeError("extract: exponent out of range");
  std::vector<int> orders;
  for (int j = 0; j < s.rank(); ++j)
    if (j != slot) orders.push_back(s.order(j));
  JetScalar out{JetShape(std::move(orders))};
  const int n = out.shape().coeff_count();
  std::vector<int> exps(static_cast<std::size_t>(out.shape().rank()));
  std::vector<int> full(static_cast<std::size_t>(s.rank()));
  for (int i = 0; i < n; ++i) {
    out.shape().exps_of(i, exps);
    int w = 0;
    for (int j = 0; j < s.rank(); ++j)
      full[static_cast<std::size_t>(j)] =
          (j == slot) ? exponent : exps[static_cast<std::size_t>(w++)];
    out.coeff(i) = a.coeff(s.index_of(full));
  }
  return out;
}

JetScalar derive_slot(const JetScalar& a, int slot) {
  const JetShape& s = a.shape();
  if (slot < 0 || slot >= s.rank()) throw ShapeError("derive: slot out of range");
  if (s.order(slot) < 1) throw ShapeError("derive: slot order is already zero");
  std::vector<int> orders = s.orders();
  orders[static_cast<std::size_t>(slot)] -= 1;
  JetScalar out{JetShape(std::move(orders))};
  const int n = out.shape().coeff_count();
  std::vector<int> exps(static_cast<std::size_t>(s.rank()));
  for (int i = 0; i < n; ++i) {
    out.shape().exps_of(i, exps);
    exps[static_cast<std::size_t>(slot)] += 1;
    out.coeff(i) = a.coeff(s.index_of(exps));
    exps[static_cast<std::size_t>(slot)] -= 1;
  }
  return out;
}

JetScalar truncate_slot(const JetScalar& a, int slot, int new_order) {
  const JetShape& s = a.shape();
  if (slot < 0 || slot >= s.rank()) throw ShapeError("truncate: slot out of range");
  if (new_order < 0 || new_order > s.order(slot))
    throw ShapeError("truncate: order out of range");
  std::vector<int> orders = s.orders();
  orders[static_cast<std::size_t>(slot)] = new_order;
  JetScalar out{JetShape(std::move(orders))};
  const int n = out.shape().coeff_count();
  std::vector<int> exps(static_cast<std::size_t>(s.rank()));
  for (int i = 0; i < n; ++i) {
    out.shape().exps_of(i, exps);
    out.coeff(i) = a.coeff(s.index_of(exps));
  }
  return out;
}

}  // namespace jetvar
