#include "jetvar/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace jetvar {

namespace {

const char* const kFunctions[] = {"sin", "cos", "exp", "log", "sqrt", "atan"};

bool is_function(const std::string& s) {
  for (const char* f : kFunctions)
    if (s == f) return true;
  return false;
}

struct Token {
  enum class Kind { Number, Ident, Op, LParen, RParen, End };
  Kind kind = Kind::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.c_str() + pos_;
      char* end = nullptr;
      t.number = std::strtod(begin, &end);
      if (end == begin) throw ParseError("malformed number", line_, col_);
      const std::size_t len = static_cast<std::size_t>(end - begin);
      t.text = src_.substr(pos_, len);
      advance(len);
      t.kind = Token::Kind::Number;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      // Primes (and an optional order digit string after a single prime)
      // belong to the identifier.
      std::size_t primes_end = j;
      int primes = 0;
      while (primes_end < src_.size() && src_[primes_end] == '\'') {
        ++primes;
        ++primes_end;
      }
      if (primes == 1) {
        while (primes_end < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[primes_end])))
          ++primes_end;
      }
      t.text = src_.substr(pos_, primes_end - pos_);
      advance(primes_end - pos_);
      t.kind = Token::Kind::Ident;
      return t;
    }
    if (c == '(') {
      t.kind = Token::Kind::LParen;
      t.text = "(";
      advance(1);
      return t;
    }
    if (c == ')') {
      t.kind = Token::Kind::RParen;
      t.text = ")";
      advance(1);
      return t;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      t.kind = Token::Kind::Op;
      t.text = std::string(1, c);
      advance(1);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(const std::string& src, const ExprContext& ctx) : lexer_(src), ctx_(ctx) {
    cur_ = lexer_.next();
  }

  ExprPtr parse() {
    ExprPtr e = expr();
    if (cur_.kind != Token::Kind::End)
      throw ParseError("unexpected token '" + cur_.text + "'", cur_.line, cur_.column);
    return e;
  }

 private:
  void bump() { cur_ = lexer_.next(); }

  bool at_op(const char* s) const {
    return cur_.kind == Token::Kind::Op && cur_.text == s;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (at_op("+") || at_op("-")) {
      const char op = cur_.text[0];
      const Token t = cur_;
      bump();
      e = binary(op, e, term(), t);
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (at_op("*") || at_op("/")) {
      const char op = cur_.text[0];
      const Token t = cur_;
      bump();
      e = binary(op, e, factor(), t);
    }
    return e;
  }

  // '^' binds tighter than unary minus and is right-associative; its
  // exponent is a factor so that negative exponents parse.
  ExprPtr factor() {
    if (at_op("-")) {
      const Token t = cur_;
      bump();
      auto node = std::make_shared<ExprNode>();
      node->kind = ExprNode::Kind::Unary;
      node->op = '-';
      node->line = t.line;
      node->column = t.column;
      node->lhs = factor();
      return node;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (at_op("^")) {
      const Token t = cur_;
      bump();
      return binary('^', base, factor(), t);
    }
    return base;
  }

  ExprPtr atom() {
    if (cur_.kind == Token::Kind::Number) {
      auto node = std::make_shared<ExprNode>();
      node->kind = ExprNode::Kind::Number;
      node->number = cur_.number;
      node->line = cur_.line;
      node->column = cur_.column;
      bump();
      return node;
    }
    if (cur_.kind == Token::Kind::LParen) {
      bump();
      ExprPtr e = expr();
      if (cur_.kind != Token::Kind::RParen)
        throw ParseError("expected ')'", cur_.line, cur_.column);
      bump();
      return e;
    }
    if (cur_.kind == Token::Kind::Ident) {
      const Token t = cur_;
      bump();
      if (is_function(t.text)) {
        if (cur_.kind != Token::Kind::LParen)
          throw ParseError("expected '(' after function '" + t.text + "'", cur_.line,
                           cur_.column);
        bump();
        ExprPtr arg = expr();
        if (cur_.kind != Token::Kind::RParen)
          throw ParseError("expected ')'", cur_.line, cur_.column);
        bump();
        auto node = std::make_shared<ExprNode>();
        node->kind = ExprNode::Kind::Call;
        node->name = t.text;
        node->line = t.line;
        node->column = t.column;
        node->lhs = arg;
        return node;
      }
      return variable(t);
    }
    throw ParseError("expected a value, got '" + cur_.text + "'", cur_.line, cur_.column);
  }

  static ExprPtr binary(char op, ExprPtr l, ExprPtr r, const Token& t) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Binary;
    node->op = op;
    node->line = t.line;
    node->column = t.column;
    node->lhs = std::move(l);
    node->rhs = std::move(r);
    return node;
  }

  ExprPtr variable(const Token& t) {
    const std::string& s = t.text;
    if (s == "t") {
      if (!ctx_.allow_t)
        throw ParseError("'t' is not available in this context", t.line, t.column);
      auto node = std::make_shared<ExprNode>();
      node->kind = ExprNode::Kind::Variable;
      node->name = "t";
      node->line = t.line;
      node->column = t.column;
      return node;
    }
    // Coordinate: x{index}{primes}.
    std::size_t i = 0;
    if (i >= s.size() || s[i] != 'x')
      throw ParseError("unknown identifier '" + s + "'", t.line, t.column);
    ++i;
    std::size_t dstart = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == dstart)
      throw ParseError("unknown identifier '" + s + "'", t.line, t.column);
    const int index = std::atoi(s.substr(dstart, i - dstart).c_str());
    int primes = 0;
    while (i < s.size() && s[i] == '\'') {
      ++primes;
      ++i;
    }
    int order = primes;
    if (primes == 1 && i < s.size()) {
      std::size_t ostart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i > ostart) order = std::atoi(s.substr(ostart, i - ostart).c_str());
    }
    if (i != s.size())
      throw ParseError("unknown identifier '" + s + "'", t.line, t.column);
    if (!ctx_.allow_coords)
      throw ParseError("coordinates are not available in this context", t.line, t.column);
    if (index < 0 || index >= ctx_.dim)
      throw ParseError("coordinate index out of range in '" + s + "'", t.line, t.column);
    if (order > ctx_.max_order)
      throw ParseError("derivative order " + std::to_string(order) + " exceeds the maximum " +
                           std::to_string(ctx_.max_order),
                       t.line, t.column);
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Variable;
    node->name = coord_name(index, order);
    node->line = t.line;
    node->column = t.column;
    return node;
  }

  Lexer lexer_;
  ExprContext ctx_;
  Token cur_;
};

JetScalar eval_node(const ExprNode& n, const std::map<std::string, JetScalar>& bindings,
                    const JetShape& shape) {
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return JetScalar::constant(shape, n.number);
    case ExprNode::Kind::Variable: {
      auto it = bindings.find(n.name);
      if (it == bindings.end())
        throw DomainError("unbound variable '" + n.name + "'");
      return it->second;
    }
    case ExprNode::Kind::Unary:
      return -eval_node(*n.lhs, bindings, shape);
    case ExprNode::Kind::Binary: {
      JetScalar l = eval_node(*n.lhs, bindings, shape);
      try {
        switch (n.op) {
          case '+':
            return l + eval_node(*n.rhs, bindings, shape);
          case '-':
            return l - eval_node(*n.rhs, bindings, shape);
          case '*':
            return l * eval_node(*n.rhs, bindings, shape);
          case '/':
            return l / eval_node(*n.rhs, bindings, shape);
          case '^': {
            if (n.rhs->kind == ExprNode::Kind::Number &&
                n.rhs->number == std::floor(n.rhs->number) &&
                std::fabs(n.rhs->number) <= 64.0) {
              const int e = static_cast<int>(n.rhs->number);
              if (e >= 0) return jet_powi(l, e);
              return jet_powi(1.0 / l, -e);
            }
            return jet_exp(eval_node(*n.rhs, bindings, shape) * jet_log(l));
          }
          default:
            break;
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& err) {
        throw DomainError(std::string(err.what()) + " (at line " + std::to_string(n.line) +
                          ", column " + std::to_string(n.column) + ")");
      }
      throw DomainError("unknown operator");
    }
    case ExprNode::Kind::Call: {
      JetScalar a = eval_node(*n.lhs, bindings, shape);
      try {
        if (n.name == "sin") return jet_sin(a);
        if (n.name == "cos") return jet_cos(a);
        if (n.name == "exp") return jet_exp(a);
        if (n.name == "log") return jet_log(a);
        if (n.name == "sqrt") return jet_sqrt(a);
        if (n.name == "atan") return jet_atan(a);
      } catch (const Error& err) {
        throw DomainError(std::string(err.what()) + " (at line " + std::to_string(n.line) +
                          ", column " + std::to_string(n.column) + ")");
      }
      throw DomainError("unknown function '" + n.name + "'");
    }
  }
  throw DomainError("malformed expression tree");
}

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", n.number);
      out += buf;
      return;
    }
    case ExprNode::Kind::Variable:
      out += n.name;
      return;
    case ExprNode::Kind::Unary:
      out += "(-";
      print_node(*n.lhs, out);
      out += ")";
      return;
    case ExprNode::Kind::Binary:
      out += "(";
      print_node(*n.lhs, out);
      out += n.op;
      print_node(*n.rhs, out);
      out += ")";
      return;
    case ExprNode::Kind::Call:
      out += n.name;
      out += "(";
      print_node(*n.lhs, out);
      out += ")";
      return;
  }
}

}  // namespace

std::string coord_name(int a, int order) {
  std::string s = "x" + std::to_string(a);
  if (order == 1) return s + "'";
  if (order == 2) return s + "''";
  if (order >= 3) return s + "'" + std::to_string(order);
  return s;
}

Expression parse_expression(const std::string& source, const ExprContext& ctx) {
  Parser p(source, ctx);
  return Expression{p.parse()};
}

JetScalar evaluate(const Expression& e, const std::map<std::string, JetScalar>& bindings) {
  if (!e.root) throw DomainError("empty expression");
  JetShape shape;
  if (!bindings.empty()) shape = bindings.begin()->second.shape();
  return eval_node(*e.root, bindings, shape);
}

std::string print_expression(const Expression& e) {
  if (!e.root) return "";
  std::string out;
  print_node(*e.root, out);
  return out;
}

}  // namespace jetvar
