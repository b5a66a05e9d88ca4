#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "jetvar/errors.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/numeric.hpp"

using namespace jetvar;

namespace {

JetScalar make(const JetShape& s, std::vector<double> c) { return JetScalar(s, std::move(c)); }

double max_diff(const JetScalar& a, const JetScalar& b) {
  REQUIRE(a.shape() == b.shape());
  double m = 0.0;
  for (int i = 0; i < a.shape().coeff_count(); ++i)
    m = std::max(m, std::fabs(a.coeff(i) - b.coeff(i)));
  return m;
}

JetScalar random_jet(SplitMix64& rng, const JetShape& s) {
  JetScalar a(s);
  for (int i = 0; i < s.coeff_count(); ++i) a.coeff(i) = rng.symmetric();
  return a;
}

}  // namespace

TEST_CASE("shape indexing and strides") {
  JetShape s({2, 3});
  CHECK(s.rank() == 2);
  CHECK(s.coeff_count() == 12);
  CHECK(s.stride(0) == 1);
  CHECK(s.stride(1) == 3);
  CHECK(s.total_order() == 5);
  int exps[2] = {1, 2};
  CHECK(s.index_of(exps) == 7);
  int out[2] = {-1, -1};
  s.exps_of(7, out);
  CHECK(out[0] == 1);
  CHECK(out[1] == 2);
  // Every index round-trips through its exponent tuple.
  for (int i = 0; i < s.coeff_count(); ++i) {
    int e[2];
    s.exps_of(i, e);
    CHECK(s.index_of(e) == i);
  }
  CHECK(JetShape().coeff_count() == 1);
}

TEST_CASE("shape limits") {
  CHECK_THROWS_AS(JetShape({-1}), ShapeError);
  CHECK_THROWS_AS(JetShape({33}), ShapeError);
  CHECK_NOTHROW(JetShape({32}));
  CHECK_THROWS_AS(JetShape({32, 32, 32}), ShapeError);  // 33^3 > 4096
  int bad[1] = {3};
  CHECK_THROWS_AS((void)JetShape({2}).index_of(bad), ShapeError);
}

TEST_CASE("multiplication is the Leibniz convolution") {
  JetShape s1({1});
  CHECK(max_diff(make(s1, {2, 3}) * make(s1, {5, 7}), make(s1, {10, 29})) == 0.0);

  // (1 + v1)^2 in two independent order-1 slots: cross term 2 v1, no v1^2.
  JetShape s11({1, 1});
  JetScalar a = seed_variable(s11, 1.0, 0);
  CHECK(max_diff(a * a, make(s11, {1, 2, 0, 0})) == 0.0);

  // Degree truncation in one slot of order 2: (x + v)^2 keeps the second
  // derivative 2, derivative-style.
  JetShape s2({2});
  JetScalar b = seed_variable(s2, 3.0);
  CHECK(max_diff(b * b, make(s2, {9, 6, 2})) == 0.0);
}

TEST_CASE("ring axioms on random elements") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    JetShape s({1 + rng.below(3), 1 + rng.below(2)});
    JetScalar a = random_jet(rng, s), b = random_jet(rng, s), c = random_jet(rng, s);
    CHECK(max_diff(a * b, b * a) <= 1e-14);
    CHECK(max_diff((a * b) * c, a * (b * c)) <= 1e-14);
    CHECK(max_diff(a * (b + c), a * b + a * c) <= 1e-14);
    CHECK(max_diff(a * JetScalar::constant(s, 1.0), a) == 0.0);
  }
}

TEST_CASE("seed_variable places a unit generator") {
  JetShape s({2});
  JetScalar x = seed_variable(s, 5.0);
  CHECK(max_diff(x, make(s, {5, 1, 0})) == 0.0);
  JetShape s11({1, 1});
  JetScalar y = seed_variable(s11, 2.0, 1);
  CHECK(y.coeff(0) == 2.0);
  CHECK(y.coeff(1) == 0.0);
  CHECK(y.coeff(2) == 1.0);
  CHECK_THROWS_AS(seed_variable(s, 0.0, 1), ShapeError);
}

TEST_CASE("elementary functions reproduce classical derivatives") {
  JetShape s2({2}), s3({3}), s4({4});
  CHECK(max_diff(jet_exp(seed_variable(JetShape({1}), 0.0)), make(JetShape({1}), {1, 1})) == 0.0);
  CHECK(max_diff(jet_sin(seed_variable(s2, 0.0)), make(s2, {0, 1, 0})) <= 1e-15);
  CHECK(max_diff(jet_sin(seed_variable(s4, 0.0)), make(s4, {0, 1, 0, -1, 0})) <= 1e-15);
  CHECK(max_diff(jet_atan(seed_variable(s3, 0.0)), make(s3, {0, 1, 0, -2})) <= 1e-15);
  // 1/(1+x) at 0: derivatives 1, -1, 2, -6.
  CHECK(max_diff(1.0 / (1.0 + seed_variable(s3, 0.0)), make(s3, {1, -1, 2, -6})) <= 1e-14);
  CHECK(max_diff(jet_powi(seed_variable(JetShape({1}), 3.0), 2), make(JetShape({1}), {9, 6})) ==
        0.0);
}

TEST_CASE("elementary identities on random jets") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    JetShape s({1 + rng.below(3), rng.below(3)});
    JetScalar a = random_jet(rng, s);
    CHECK(max_diff(jet_sin(a) * jet_sin(a) + jet_cos(a) * jet_cos(a),
                   JetScalar::constant(s, 1.0)) <= 1e-13);
    JetScalar pos = a;
    pos.coeff(0) = 2.0 + rng.uniform();
    CHECK(max_diff(jet_log(jet_exp(a)), a) <= 1e-12);
    CHECK(max_diff(jet_sqrt(pos) * jet_sqrt(pos), pos) <= 1e-13);
    CHECK(max_diff(jet_pow(pos, 0.5), jet_sqrt(pos)) <= 1e-13);
    CHECK(max_diff(jet_pow(pos, 3.0), jet_powi(pos, 3)) <= 1e-11);
    CHECK(max_diff((a / pos) * pos, a) <= 1e-13);
  }
}

TEST_CASE("domain errors in the scalar ring") {
  JetShape s({2});
  CHECK_THROWS_AS(jet_log(seed_variable(s, -1.0)), SingularityError);
  CHECK_THROWS_AS(jet_log(seed_variable(s, 0.0)), SingularityError);
  CHECK_THROWS_AS(jet_sqrt(seed_variable(s, -4.0)), SingularityError);
  CHECK_THROWS_AS(jet_pow(seed_variable(s, -2.0), 0.5), SingularityError);
  CHECK_THROWS_AS(1.0 / seed_variable(s, 0.0), SingularityError);
  CHECK_THROWS_AS(jet_powi(seed_variable(s, 1.0), -1), ShapeError);
  CHECK_THROWS_AS(seed_variable(s, 0.0) + seed_variable(JetShape({3}), 0.0), ShapeError);
  CHECK_NOTHROW(jet_powi(seed_variable(s, 0.0), 3));  // integer powers allow any base
}

TEST_CASE("split and merge move between slot refinements") {
  JetShape s2({2}), s11({1, 1});
  JetScalar a = make(s2, {1, 2, 3});
  JetScalar sp = split_slots(a, s11);
  CHECK(max_diff(sp, make(s11, {1, 2, 2, 3})) == 0.0);
  CHECK(is_symmetric(sp));
  CHECK(max_diff(merge_slots(sp), a) == 0.0);

  // Round-trip at order 3 over three slots.
  JetShape s3({3}), s111({1, 1, 1});
  JetScalar b = make(s3, {4, 3, 2, 1});
  CHECK(max_diff(merge_slots(split_slots(b, s111)), b) <= 1e-15);

  JetScalar skew = make(s11, {0, 1, 2, 0});
  CHECK(!is_symmetric(skew));
  CHECK_THROWS_AS(merge_slots(skew), HolonomyError);
  CHECK_THROWS_AS(split_slots(a, JetShape({1, 2})), ShapeError);  // orders sum to 3, not 2
  CHECK_THROWS_AS(split_slots(sp, s2), ShapeError);               // source must be rank 1
}

TEST_CASE("transpose swaps the two generators") {
  JetShape s12({1, 2});
  std::vector<double> c(6);
  for (int i = 0; i < 6; ++i) c[static_cast<std::size_t>(i)] = 10.0 * i + 1.0;
  JetScalar a = make(s12, c);
  JetScalar t = transpose_slots(a);
  CHECK(t.shape() == JetShape({2, 1}));
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int e2 = 0; e2 <= 2; ++e2) {
      int ea[2] = {e1, e2}, eb[2] = {e2, e1};
      CHECK(a.coeff(s12.index_of(ea)) == t.coeff(t.shape().index_of(eb)));
    }
  CHECK(max_diff(transpose_slots(t), a) == 0.0);
  CHECK_THROWS_AS(transpose_slots(JetScalar(make(JetShape({2}), {1, 2, 3}))), ShapeError);
}

TEST_CASE("extend, extract, derive, truncate") {
  JetShape s2({2});
  JetScalar sin4 = jet_sin(seed_variable(JetShape({3}), 0.0));
  CHECK(max_diff(derive_slot(sin4, 0), make(s2, {1, 0, -1})) <= 1e-15);
  CHECK(max_diff(truncate_slot(sin4, 0, 1), make(JetShape({1}), {0, 1})) == 0.0);

  JetScalar a = make(s2, {1, 2, 3});
  JetScalar ext = extend_slots(a, {2});
  CHECK(ext.shape() == JetShape({2, 2}));
  CHECK(ext.coeff(0) == 1.0);
  CHECK(ext.coeff(1) == 2.0);
  CHECK(ext.coeff(2) == 3.0);
  for (int i = 3; i < 9; ++i) CHECK(ext.coeff(i) == 0.0);

  JetScalar sp = split_slots(a, JetShape({1, 1}));  // (1, 2, 2, 3)
  CHECK(max_diff(extract_slot(sp, 1, 0), make(JetShape({1}), {1, 2})) == 0.0);
  CHECK(max_diff(extract_slot(sp, 1, 1), make(JetShape({1}), {2, 3})) == 0.0);
  CHECK_THROWS_AS(extract_slot(sp, 2, 0), ShapeError);
  CHECK_THROWS_AS(extract_slot(sp, 1, 2), ShapeError);
  CHECK_THROWS_AS(derive_slot(sp, 3), ShapeError);
  CHECK_THROWS_AS(truncate_slot(a, 0, 5), ShapeError);
}

TEST_CASE("binomial table") {
  CHECK(binom(0, 0) == 1.0);
  CHECK(binom(5, 2) == 10.0);
  CHECK(binom(6, 3) == 20.0);
  CHECK(binom(3, 5) == 0.0);
}
