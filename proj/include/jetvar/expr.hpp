#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jetvar/errors.hpp"
#include "jetvar/jet.hpp"

namespace jetvar {

/// What a parsed expression may refer to.  Coordinates are spelled
/// x0 ... x{dim-1} with derivative orders as primes (x0', x0'', and x0'3 for
/// order three); t is legal only where allow_t is set.
struct ExprContext {
  int dim = 0;
  int max_order = 0;
  bool allow_t = false;
  bool allow_coords = true;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, Variable, Unary, Binary, Call };
  Kind kind = Kind::Number;
  int line = 1;
  int column = 1;
  double number = 0.0;
  std::string name;  // canonical variable name, or function name for calls
  char op = 0;       // one of + - * / ^ for Binary
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Expression {
  ExprPtr root;
};

/// Canonical spelling of coordinate a at the given derivative order.
std::string coord_name(int a, int order);

Expression parse_expression(const std::string& source, const ExprContext& ctx);

/// Evaluates over whatever jet shape the bindings carry; constants adopt that
/// shape.  An integer-literal exponent is evaluated by repeated
/// multiplication, any other exponent through exp(log(base) * e).
JetScalar evaluate(const Expression& e, const std::map<std::string, JetScalar>& bindings);

std::string print_expression(const Expression& e);

}  // namespace jetvar
