#include <doctest.h>

#include <cmath>

#include "jacobiflow/error.hpp"
#include "jacobiflow/smooth_expr.hpp"

using namespace jacobiflow;

TEST_SUITE("smooth_expr") {

TEST_CASE("parse and evaluate a polynomial") {
  const SmoothExpr f = parse_expr("x1^2 + x2^2", 2);
  CHECK(f.arity() == 2);
  CHECK(f({1.0, 2.0}) == 5.0);
  CHECK(f.is_polynomial());
  CHECK(parse_expr("x^2 + y^2", 2)({1.0, 2.0}) == 5.0);
}

TEST_CASE("flat germ vanishes exactly at zero") {
  const SmoothExpr f = parse_expr("flatexp(x1)", 1);
  CHECK(f({0.0}) == 0.0);
  CHECK(f({0.5}) == doctest::Approx(std::exp(-2.0)));
  CHECK(f({-0.5}) == doctest::Approx(std::exp(-2.0)));
  CHECK_FALSE(f.is_polynomial());
}

TEST_CASE("syntax error reports the offset") {
  try {
    parse_expr("x1 +", 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(std::string(e.what()).find("at offset 4") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_expr("x3", 2), Error);
  CHECK_THROWS_AS(parse_expr("(x", 1), ParseError);
}

TEST_CASE("symbolic derivatives") {
  const SmoothExpr d = derive(parse_expr("x^2 + y^2", 2), 0);
  for (double x : {-1.5, 0.0, 2.0}) CHECK(d({x, 7.0}) == 2 * x);
  const SmoothExpr c = derive(parse_expr("x^3 - 3*x", 1), 0);
  for (double x : {-2.0, 0.5, 3.0}) CHECK(c({x}) == doctest::Approx(3 * x * x - 3));
  CHECK(derive(parse_expr("flatexp(x)", 1), 0)({0.0}) == 0.0);
}

TEST_CASE("derivative matches central differences on transcendental terms") {
  const SmoothExpr f = parse_expr("exp(x)*sin(x) + log(1 + x^2)/cos(x)", 1);
  const SmoothExpr d = derive(f, 0);
  for (double x : {-0.7, 0.1, 0.9}) {
    const double h = 1e-6;
    CHECK(d({x}) == doctest::Approx((f({x + h}) - f({x - h})) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("singular evaluation raises DomainError") {
  CHECK_THROWS_AS(parse_expr("1/x", 1)({0.0}), DomainError);
  CHECK_THROWS_AS(parse_expr("log(x)", 1)({-1.0}), DomainError);
  CHECK_THROWS_AS(parse_expr("x + y", 2)({1.0}), ShapeError);
}

TEST_CASE("directional derivative") {
  const SmoothExpr f = parse_expr("x^2 + y^2", 2);
  const SmoothExpr e = directional_derivative(f, parse_field("x/2; y/2", 2)) - f;
  CHECK(max_abs_on_grid(e, Box::cube(2, -2, 2), 9) == 0.0);
  const SmoothExpr c = directional_derivative(SmoothExpr::constant(2, 7), parse_field("x*y; exp(x)", 2));
  CHECK(max_abs_on_grid(c, Box::cube(2, -1, 1), 5) == 0.0);
  const SmoothExpr g = parse_expr("x^2*y + y^3", 2);
  const SmoothExpr r = directional_derivative(g, parse_field("x/3; y/3", 2)) - g;
  CHECK(max_abs_on_grid(r, Box::cube(2, -1, 1), 5) <= 1e-15);
}

TEST_CASE("substitute and embed") {
  const SmoothExpr f = parse_expr("x^2 + y", 2);
  const std::vector<SmoothExpr> rep = {parse_expr("2*x", 1), parse_expr("x - 1", 1)};
  CHECK(substitute(f, rep)({3.0}) == 38.0);
  const SmoothExpr g = embed(parse_expr("x^3", 1), 3, 2);
  CHECK(g.arity() == 3);
  CHECK(g({5.0, 5.0, 2.0}) == 8.0);
}

TEST_CASE("flatmul is exactly zero where the flat factor vanishes") {
  const SmoothExpr f = flatmul(parse_expr("x", 1), parse_expr("1/x^3", 1));
  CHECK(f({0.0}) == 0.0);
  CHECK(f({0.5}) == doctest::Approx(std::exp(-2.0) * 8));
}

TEST_CASE("grid points cover the box row-major") {
  const auto pts = grid_points(Box::cube(2, 0, 1), 3);
  REQUIRE(pts.size() == 9);
  CHECK(pts.front() == std::vector<double>{0, 0});
  CHECK(pts[1] == std::vector<double>{0, 0.5});
  CHECK(pts.back() == std::vector<double>{1, 1});
}

}
