#include "isoform/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "isoform/error.hpp"

namespace isoform {

struct Expression::Node {
  enum class Kind { number, variable, unary_minus, binary, call } kind;
  double value = 0;
  char op = 0;  // binary operator, or variable tag x/y/r/t
  std::string name;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("cli-io", "expression error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(Kind k, char op, std::vector<NodePtr> args, double value = 0, std::string name = {}) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = k;
    n->op = op;
    n->args = std::move(args);
    n->value = value;
    n->name = std::move(name);
    return n;
  }

  NodePtr sum() {
    NodePtr lhs = product();
    for (;;) {
      if (accept('+'))
        lhs = make(Kind::binary, '+', {lhs, product()});
      else if (accept('-'))
        lhs = make(Kind::binary, '-', {lhs, product()});
      else
        return lhs;
    }
  }

  NodePtr product() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Kind::binary, '*', {lhs, unary()});
      else if (accept('/'))
        lhs = make(Kind::binary, '/', {lhs, unary()});
      else
        return lhs;
    }
  }

  // Unary minus binds looser than ^, so -x^2 = -(x^2).
  NodePtr unary() {
    if (accept('-')) return make(Kind::unary_minus, 0, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::binary, '^', {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (accept('(')) {
      NodePtr n = sum();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += end - begin;
      return make(Kind::number, 0, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (accept('(')) {
        std::vector<NodePtr> args;
        if (!accept(')')) {
          do args.push_back(sum());
          while (accept(','));
          if (!accept(')')) fail("expected ')' after arguments of " + id);
        }
        std::size_t want = id == "atan2" ? 2 : 1;
        static const char* known[] = {"log", "exp", "sin", "cos", "sqrt", "abs", "atan2"};
        bool ok = false;
        for (const char* k : known) ok = ok || id == k;
        if (!ok) {
          pos_ = start;
          fail("unknown function '" + id + "'");
        }
        if (args.size() != want) {
          pos_ = start;
          fail(id + " takes " + std::to_string(want) + " argument(s)");
        }
        return make(Kind::call, 0, std::move(args), 0, id);
      }
      if (id == "x") return make(Kind::variable, 'x', {});
      if (id == "y") return make(Kind::variable, 'y', {});
      if (id == "r") return make(Kind::variable, 'r', {});
      if (id == "theta") return make(Kind::variable, 't', {});
      if (id == "pi") return make(Kind::number, 0, {}, M_PI);
      if (id == "e") return make(Kind::number, 0, {}, M_E);
      pos_ = start;
      fail("unknown variable '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, const ExprVars& v) {
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::variable:
      switch (n.op) {
        case 'x': return v.x;
        case 'y': return v.y;
        case 'r': return v.r;
        default: return v.theta;
      }
    case Kind::unary_minus: return -eval_node(*n.args[0], v);
    case Kind::binary: {
      double a = eval_node(*n.args[0], v), b = eval_node(*n.args[1], v);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
    case Kind::call: {
      double a = eval_node(*n.args[0], v);
      if (n.name == "log") return std::log(a);
      if (n.name == "exp") return std::exp(a);
      if (n.name == "sin") return std::sin(a);
      if (n.name == "cos") return std::cos(a);
      if (n.name == "sqrt") return std::sqrt(a);
      if (n.name == "abs") return std::abs(a);
      return std::atan2(a, eval_node(*n.args[1], v));
    }
  }
  return NAN;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::eval(const ExprVars& vars) const {
  double v = eval_node(*root_, vars);
  if (!std::isfinite(v))
    throw Error("cli-io", "expression '" + text_ + "' is not finite at (x=" + std::to_string(vars.x) +
                              ", y=" + std::to_string(vars.y) + ")");
  return v;
}

}  // namespace isoform
