#include "scv/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scv {

enum class NodeKind { Literal, Var, Neg, Exp, Log, Abs, Add, Sub, Mul, Div, Pow, Max, Min };

struct Expr::Node {
  NodeKind kind;
  double literal = 0.0;
  int var_index = 0;   // x_j -> 2j, y_j -> 2j+1, z_abs2_j -> abs2 of axis j
  bool var_abs2 = false;
  int axis = 0;
  NodePtr a, b;
  size_t offset = 0;
};

ExprError::ExprError(const std::string& msg, size_t off)
    : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& src) : s(src) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  NodePtr parse() {
    NodePtr e = sum();
    skip_ws();
    if (pos != s.size()) throw ExprError("unexpected trailing input", pos);
    return e;
  }

  NodePtr sum() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        auto n = std::make_shared<Node>(Node{NodeKind::Add});
        n->a = lhs;
        n->b = term();
        lhs = n;
      } else if (eat('-')) {
        auto n = std::make_shared<Node>(Node{NodeKind::Sub});
        n->a = lhs;
        n->b = term();
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        auto n = std::make_shared<Node>(Node{NodeKind::Mul});
        n->a = lhs;
        n->b = unary();
        lhs = n;
      } else if (eat('/')) {
        auto n = std::make_shared<Node>(Node{NodeKind::Div});
        n->a = lhs;
        n->b = unary();
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip_ws();
    if (eat('-')) {
      auto n = std::make_shared<Node>(Node{NodeKind::Neg, 0.0, 0, false, 0, nullptr, nullptr, pos});
      n->a = unary();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    if (eat('^')) {
      auto n = std::make_shared<Node>(Node{NodeKind::Pow});
      n->a = base;
      n->b = unary(); // right associative, binds unary minus in the exponent
      return n;
    }
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos >= s.size()) throw ExprError("unexpected end of input", pos);
    const size_t start = pos;
    const char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = sum();
      if (!eat(')')) throw ExprError("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t used = 0;
      double v;
      try {
        v = std::stod(s.substr(pos), &used);
      } catch (const std::exception&) {
        throw ExprError("malformed number", pos);
      }
      pos += used;
      auto n = std::make_shared<Node>(Node{NodeKind::Literal});
      n->literal = v;
      n->offset = start;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos;
      while (end < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
        ++end;
      std::string name = s.substr(pos, end - pos);
      pos = end;
      if (name == "exp" || name == "log" || name == "abs") {
        if (!eat('(')) throw ExprError("expected '(' after " + name, pos);
        auto n = std::make_shared<Node>(
            Node{name == "exp" ? NodeKind::Exp : name == "log" ? NodeKind::Log : NodeKind::Abs});
        n->offset = start;
        n->a = sum();
        if (!eat(')')) throw ExprError("expected ')'", pos);
        return n;
      }
      if (name == "max" || name == "min") {
        if (!eat('(')) throw ExprError("expected '(' after " + name, pos);
        auto n = std::make_shared<Node>(Node{name == "max" ? NodeKind::Max : NodeKind::Min});
        n->offset = start;
        n->a = sum();
        if (!eat(',')) throw ExprError(name + " takes two arguments", pos);
        n->b = sum();
        if (!eat(')')) throw ExprError("expected ')'", pos);
        return n;
      }
      // variables: x<k>, y<k>, z_abs2_<k>, 1-based axis index
      auto var_node = [&](bool is_y, bool abs2, const std::string& digits) -> NodePtr {
        if (digits.empty()) throw ExprError("variable needs an axis index: " + name, start);
        int axis1 = 0;
        for (char d : digits) {
          if (!std::isdigit(static_cast<unsigned char>(d)))
            throw ExprError("unknown identifier: " + name, start);
          axis1 = axis1 * 10 + (d - '0');
        }
        if (axis1 < 1) throw ExprError("variable axis index must be >= 1: " + name, start);
        auto n = std::make_shared<Node>(Node{NodeKind::Var});
        n->axis = axis1 - 1;
        n->var_abs2 = abs2;
        n->var_index = 2 * (axis1 - 1) + (is_y ? 1 : 0);
        n->offset = start;
        return n;
      };
      if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y'))
        return var_node(name[0] == 'y', false, name.substr(1));
      if (name.rfind("z_abs2_", 0) == 0) return var_node(false, true, name.substr(7));
      throw ExprError("unknown identifier: " + name, start);
    }
    throw ExprError(std::string("unexpected character '") + c + "'", pos);
  }
};

double eval_node(const Node& n, std::span<const double> p) {
  switch (n.kind) {
    case NodeKind::Literal:
      return n.literal;
    case NodeKind::Var: {
      if (n.var_abs2) {
        const size_t ix = size_t(2 * n.axis), iy = ix + 1;
        if (iy >= p.size()) throw ExprError("variable index exceeds point dimension", n.offset);
        return p[ix] * p[ix] + p[iy] * p[iy];
      }
      if (size_t(n.var_index) >= p.size())
        throw ExprError("variable index exceeds point dimension", n.offset);
      return p[size_t(n.var_index)];
    }
    case NodeKind::Neg:
      return -eval_node(*n.a, p);
    case NodeKind::Exp:
      return std::exp(eval_node(*n.a, p));
    case NodeKind::Log: {
      const double v = eval_node(*n.a, p);
      if (!(v > 0.0)) throw ExprError("log of non-positive argument", n.offset);
      return std::log(v);
    }
    case NodeKind::Abs:
      return std::abs(eval_node(*n.a, p));
    case NodeKind::Add:
      return eval_node(*n.a, p) + eval_node(*n.b, p);
    case NodeKind::Sub:
      return eval_node(*n.a, p) - eval_node(*n.b, p);
    case NodeKind::Mul:
      return eval_node(*n.a, p) * eval_node(*n.b, p);
    case NodeKind::Div: {
      const double d = eval_node(*n.b, p);
      if (d == 0.0) throw ExprError("division by zero", n.offset);
      return eval_node(*n.a, p) / d;
    }
    case NodeKind::Pow:
      return std::pow(eval_node(*n.a, p), eval_node(*n.b, p));
    case NodeKind::Max:
      return std::max(eval_node(*n.a, p), eval_node(*n.b, p));
    case NodeKind::Min:
      return std::min(eval_node(*n.a, p), eval_node(*n.b, p));
  }
  throw std::logic_error("eval: bad node");
}

void print_node(const Node& n, std::ostringstream& out) {
  switch (n.kind) {
    case NodeKind::Literal:
      out << n.literal;
      return;
    case NodeKind::Var:
      if (n.var_abs2)
        out << "z_abs2_" << (n.axis + 1);
      else
        out << (n.var_index % 2 == 0 ? 'x' : 'y') << (n.axis + 1);
      return;
    case NodeKind::Neg:
      out << "(-";
      print_node(*n.a, out);
      out << ")";
      return;
    case NodeKind::Exp:
    case NodeKind::Log:
    case NodeKind::Abs:
      out << (n.kind == NodeKind::Exp ? "exp(" : n.kind == NodeKind::Log ? "log(" : "abs(");
      print_node(*n.a, out);
      out << ")";
      return;
    case NodeKind::Max:
    case NodeKind::Min:
      out << (n.kind == NodeKind::Max ? "max(" : "min(");
      print_node(*n.a, out);
      out << ", ";
      print_node(*n.b, out);
      out << ")";
      return;
    default: {
      const char* op = n.kind == NodeKind::Add   ? " + "
                       : n.kind == NodeKind::Sub ? " - "
                       : n.kind == NodeKind::Mul ? " * "
                       : n.kind == NodeKind::Div ? " / "
                                                 : "^";
      out << "(";
      print_node(*n.a, out);
      out << op;
      print_node(*n.b, out);
      out << ")";
      return;
    }
  }
}

} // namespace

double Expr::eval(std::span<const double> point) const {
  if (!root_) throw std::logic_error("eval on empty expression");
  return eval_node(*root_, point);
}

double Expr::eval_at(std::span<const Complex> z) const {
  std::vector<double> p(2 * z.size());
  for (size_t j = 0; j < z.size(); ++j) {
    p[2 * j] = z[j].real();
    p[2 * j + 1] = z[j].imag();
  }
  return eval(p);
}

std::string Expr::print() const {
  if (!root_) return "";
  std::ostringstream out;
  print_node(*root_, out);
  return out.str();
}

Expr parse_expr(const std::string& src) {
  Parser p(src);
  return Expr(p.parse());
}

} // namespace scv
