#include <doctest.h>

#include "scv/expr.hpp"

using namespace scv;

namespace {
double ev(const std::string& src, std::vector<double> pt) {
  return parse_expr(src).eval(pt);
}
} // namespace

TEST_CASE("basic evaluation") {
  CHECK(ev("x1^2 + y1^2", {3, 4}) == doctest::Approx(25.0));
  CHECK(ev("max(x1, y1)", {1, 2}) == doctest::Approx(2.0));
  CHECK(ev("min(x1, y1)", {1, 2}) == doctest::Approx(1.0));
  CHECK(ev("z_abs2_1", {3, 4}) == doctest::Approx(25.0));
  CHECK(ev("exp(0*x1)", {5, 0}) == doctest::Approx(1.0));
  CHECK(ev("abs(-x1)", {2.5, 0}) == doctest::Approx(2.5));
  CHECK(ev("log(x1*x1 + y1*y1 + 0.01)", {0, 0}) == doctest::Approx(std::log(0.01)));
}

TEST_CASE("precedence and associativity") {
  CHECK(ev("2*3+4", {0, 0}) == doctest::Approx(10.0));
  CHECK(ev("2+3*4", {0, 0}) == doctest::Approx(14.0));
  CHECK(ev("2^3^2", {0, 0}) == doctest::Approx(512.0)); // right associative
  CHECK(ev("-x1^2", {3, 0}) == doctest::Approx(-9.0));  // ^ binds before unary -
  CHECK(ev("(1+2)*3", {0, 0}) == doctest::Approx(9.0));
  CHECK(ev("6/3/2", {0, 0}) == doctest::Approx(1.0)); // left associative
  CHECK(ev("2^-1", {0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("syntax errors carry byte offsets") {
  CHECK_THROWS_AS(parse_expr("x1 + * 2"), ExprError);
  try {
    parse_expr("x1 + * 2");
  } catch (const ExprError& e) {
    CHECK(e.offset == 5);
  }
  CHECK_THROWS_AS(parse_expr("bogus(3)"), ExprError);
  CHECK_THROWS_AS(parse_expr("x1 +"), ExprError);
  CHECK_THROWS_AS(parse_expr("max(x1)"), ExprError);
  CHECK_THROWS_AS(parse_expr("(x1"), ExprError);
  CHECK_THROWS_AS(parse_expr("x0"), ExprError);
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(ev("log(x1)", {0, 0}), ExprError);
  CHECK_THROWS_AS(ev("log(x1)", {-2, 0}), ExprError);
  CHECK_THROWS_AS(ev("1/x1", {0, 0}), ExprError);
  CHECK_THROWS_AS(ev("x2", {1, 1}), ExprError); // index beyond point length
}

TEST_CASE("print-parse idempotence on the canonical form") {
  const std::vector<std::string> sources = {
      "x1^2 + y1^2",
      "log(x1*x1 + y1*y1 + 0.01)",
      "max(x1, min(y1, 2)) - exp(-x1)",
      "z_abs2_1 + 2*z_abs2_2",
      "-x1 * (y1 + 3) / 7",
  };
  for (const auto& s : sources) {
    const std::string once = parse_expr(s).print();
    const std::string twice = parse_expr(once).print();
    CHECK(once == twice);
  }
}

TEST_CASE("eval_at maps complex coordinates to interleaved reals") {
  const Expr e = parse_expr("x2 - y1");
  const Complex z[2] = {Complex(1, 5), Complex(7, 2)};
  CHECK(e.eval_at(z) == doctest::Approx(2.0)); // x2=7, y1=5
}
