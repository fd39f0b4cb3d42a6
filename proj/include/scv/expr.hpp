#pragma once

#include <memory>
#include <span>
#include <string>

#include "scv/types.hpp"

namespace scv {

// Real-valued expression language for weights: variables x1..xn, y1..yn and
// z_abs2_j = x_j^2 + y_j^2; operators + - * / ^, unary -, exp/log/abs, max/min.
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  bool valid() const { return root_ != nullptr; }
  const Node& root() const { return *root_; }

  // Evaluation point layout: (x1, y1, x2, y2, ..., xn, yn).
  double eval(std::span<const double> point) const;
  double eval_at(std::span<const Complex> z) const;

  std::string print() const; // canonical fully parenthesized form

 private:
  NodePtr root_;
};

struct ExprError : std::runtime_error {
  size_t offset; // byte offset into the source text
  ExprError(const std::string& msg, size_t off);
};

Expr parse_expr(const std::string& src);

} // namespace scv
