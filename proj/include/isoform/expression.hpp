#pragma once

#include <memory>
#include <string>

namespace isoform {

/// Values available to an expression at one vertex.
struct ExprVars {
  double x = 0, y = 0, r = 0, theta = 0;
};

/// Arithmetic expression over x, y, r, theta and the constants pi and e.
/// Operators + - * / ^ (right associative) and unary minus; functions log,
/// exp, sin, cos, sqrt, abs and atan2(y, x). Parse errors throw
/// Error("cli-io") with the character position.
class Expression {
 public:
  static Expression parse(const std::string& text);
  double eval(const ExprVars& vars) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace isoform
