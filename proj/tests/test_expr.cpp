#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <string>

#include "jetvar/errors.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/jet.hpp"

using namespace jetvar;

namespace {

double eval_const(const std::string& src) {
  ExprContext ctx;
  ctx.allow_coords = false;
  Expression e = parse_expression(src, ctx);
  return evaluate(e, {}).value();
}

ExprContext lagrangian_ctx(int dim, int k) {
  ExprContext ctx;
  ctx.dim = dim;
  ctx.max_order = k;
  ctx.allow_t = false;
  ctx.allow_coords = true;
  return ctx;
}

}  // namespace

TEST_CASE("arithmetic precedence and associativity") {
  CHECK(eval_const("2+3*4^2") == doctest::Approx(50.0));
  CHECK(eval_const("2^3^2") == doctest::Approx(512.0));  // right-assoc
  CHECK(eval_const("-2^2") == doctest::Approx(-4.0));    // ^ binds tighter than -
  CHECK(eval_const("(2+3)*4") == doctest::Approx(20.0));
  CHECK(eval_const("2*-3") == doctest::Approx(-6.0));
  CHECK(eval_const("5--3") == doctest::Approx(8.0));
  CHECK(eval_const("10/4") == doctest::Approx(2.5));
  CHECK(eval_const("1/2/2") == doctest::Approx(0.25));  // left-assoc
  CHECK(eval_const("7-3-2") == doctest::Approx(2.0));
  CHECK(eval_const("1.5e2+0.5") == doctest::Approx(150.5));
}

TEST_CASE("functions evaluate through the jet ring") {
  CHECK(eval_const("sin(0)") == doctest::Approx(0.0));
  CHECK(eval_const("cos(0)") == doctest::Approx(1.0));
  CHECK(eval_const("exp(log(5))") == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(eval_const("sqrt(16)") == doctest::Approx(4.0));
  CHECK(eval_const("atan(1)*4") == doctest::Approx(3.14159265358979).epsilon(1e-12));
}

TEST_CASE("coordinate spellings") {
  CHECK(coord_name(0, 0) == "x0");
  CHECK(coord_name(0, 1) == "x0'");
  CHECK(coord_name(1, 2) == "x1''");
  CHECK(coord_name(0, 3) == "x0'3");
  CHECK(coord_name(2, 4) == "x2'4");
}

TEST_CASE("coordinates bind and propagate jets") {
  Expression e = parse_expression("x0'^2 + x0*x1", lagrangian_ctx(2, 1));
  std::map<std::string, JetScalar> binds;
  binds["x0"] = JetScalar(2.0);
  binds["x0'"] = JetScalar(3.0);
  binds["x1"] = JetScalar(5.0);
  binds["x1'"] = JetScalar(0.0);
  CHECK(evaluate(e, binds).value() == doctest::Approx(19.0));

  // Jet arguments flow through the integer-power fast path.
  Expression sq = parse_expression("x0^2", lagrangian_ctx(1, 0));
  std::map<std::string, JetScalar> jb;
  jb["x0"] = seed_variable(JetShape({2}), 0.0);
  JetScalar r = evaluate(sq, jb);
  CHECK(r.coeff(0) == doctest::Approx(0.0));
  CHECK(r.coeff(1) == doctest::Approx(0.0));
  CHECK(r.coeff(2) == doctest::Approx(2.0));  // second derivative of x^2

  // Non-integer exponents need a positive base but match pow.
  Expression hp = parse_expression("x0^0.5", lagrangian_ctx(1, 0));
  std::map<std::string, JetScalar> pb;
  pb["x0"] = seed_variable(JetShape({1}), 4.0);
  JetScalar h = evaluate(hp, pb);
  CHECK(h.coeff(0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(h.coeff(1) == doctest::Approx(0.25).epsilon(1e-13));

  // Negative exponents parse as unary minus and take the general path.
  Expression np = parse_expression("x0^-2", lagrangian_ctx(1, 0));
  std::map<std::string, JetScalar> nb;
  nb["x0"] = JetScalar(2.0);
  CHECK(evaluate(np, nb).value() == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("time variable availability") {
  ExprContext curve_ctx;
  curve_ctx.allow_t = true;
  curve_ctx.allow_coords = false;
  Expression e = parse_expression("sin(t)*t", curve_ctx);
  std::map<std::string, JetScalar> binds;
  binds["t"] = seed_variable(JetShape({2}), 0.5);
  JetScalar direct = jet_sin(binds["t"]) * binds["t"];
  JetScalar got = evaluate(e, binds);
  for (int i = 0; i < 3; ++i) CHECK(got.coeff(i) == doctest::Approx(direct.coeff(i)));

  try {
    parse_expression("t+1", lagrangian_ctx(1, 1));
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 1);
    CHECK(err.column == 1);
  }
}

TEST_CASE("parse errors carry positions") {
  ExprContext ctx = lagrangian_ctx(2, 2);
  try {
    parse_expression("x0 + x3", ctx);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.column == 6);
    CHECK(std::string(err.what()).find("coordinate index out of range") != std::string::npos);
  }
  try {
    parse_expression("x0'3", ctx);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(std::string(err.what()).find("exceeds the maximum") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expression("1 + ", ctx), ParseError);
  CHECK_THROWS_AS(parse_expression("sin(1", ctx), ParseError);
  CHECK_THROWS_AS(parse_expression("2 @ 3", ctx), ParseError);
  CHECK_THROWS_AS(parse_expression("", ctx), ParseError);

  ExprContext nocoord;
  nocoord.allow_coords = false;
  CHECK_THROWS_AS(parse_expression("x0", nocoord), ParseError);
}

TEST_CASE("evaluation errors") {
  ExprContext ctx = lagrangian_ctx(1, 1);
  Expression e = parse_expression("x0 + x0'", ctx);
  std::map<std::string, JetScalar> partial;
  partial["x0"] = JetScalar(1.0);
  CHECK_THROWS_AS(evaluate(e, partial), DomainError);  // x0' unbound

  // Unknown names are rejected while parsing, with a position.
  CHECK_THROWS_AS(parse_expression("foo(x0)", ctx), ParseError);

  Expression lg = parse_expression("log(x0)", ctx);
  std::map<std::string, JetScalar> neg;
  neg["x0"] = JetScalar(-1.0);
  try {
    evaluate(lg, neg);
    FAIL("expected DomainError");
  } catch (const DomainError& err) {
    // Failures inside functions are annotated with the call position.
    CHECK(std::string(err.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("printing normalizes with full parentheses") {
  ExprContext ctx = lagrangian_ctx(2, 2);
  CHECK(print_expression(parse_expression("1+2*3", ctx)) == "(1+(2*3))");
  CHECK(print_expression(parse_expression("-x0", ctx)) == "(-x0)");
  CHECK(print_expression(parse_expression("sin(x0')", ctx)) == "sin(x0')");
  for (const char* src : {"x0''^2 - 0.3*x1*x0'", "2^3^2", "-(x0+x1)/4", "cos(x0)*sin(x1')"}) {
    Expression once = parse_expression(src, ctx);
    std::string p1 = print_expression(once);
    std::string p2 = print_expression(parse_expression(p1, ctx));
    CHECK(p1 == p2);
  }
}
