#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jacobiflow/critical_points.hpp"
#include "jacobiflow/diffeo.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

using namespace jacobiflow;

TEST_SUITE("numerics") {

TEST_CASE("brent and bisection") {
  const auto r = numerics::brent([](double x) { return std::cos(x) - x; }, 0, 1);
  CHECK(r.x == doctest::Approx(0.7390851332151607).epsilon(1e-12));
  CHECK(numerics::bisect_sign_change([](double x) { return x * x - 2; }, 0, 2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(numerics::brent([](double x) { return x * x + 1; }, -1, 1), NumericalError);
}

TEST_CASE("bracket expansion") {
  auto [lo, hi] = numerics::expand_bracket([](double x) { return x - 100.0; }, 0, 1);
  CHECK(lo <= 100.0);
  CHECK(hi >= 100.0);
}

TEST_CASE("adaptive quadrature") {
  const auto q = numerics::integrate([](double x) { return std::exp(x); }, 0, 1, 1e-13);
  CHECK(std::abs(q.value - (std::numbers::e - 1)) <= 1e-13);
  const auto p = numerics::integrate([](double x) { return std::sqrt(x); }, 0, 1, 1e-10);
  CHECK(std::abs(p.value - 2.0 / 3.0) <= 1e-9);
  // tolerances below the rounding floor still terminate
  const auto n = numerics::integrate([](double x) { return 1e6 * std::sin(x); }, 0, 3, 1e-30);
  CHECK(n.value == doctest::Approx(1e6 * (1 - std::cos(3.0))));
}

TEST_CASE("extrapolation to zero") {
  std::vector<double> h, v;
  for (int j = 0; j < 6; ++j) {
    const double x = 0.1 / (1 << j);
    h.push_back(x);
    v.push_back(3 + 2 * x - x * x);
  }
  const auto e = numerics::extrapolate_to_zero(h, v);
  CHECK(std::abs(e.value - 3.0) <= 1e-12);
}

TEST_CASE("linspace") {
  const auto g = numerics::linspace(-1, 1, 5);
  CHECK(g == std::vector<double>{-1, -0.5, 0, 0.5, 1});
}

TEST_CASE("zeros including touching zeros") {
  const auto z = zeros_1d(parse_expr("3*x^2 - 3", 1), -2, 2);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(-1.0));
  CHECK(z[1] == doctest::Approx(1.0));
  const auto t = zeros_1d(parse_expr("(x - 0.3)^2*(x + 2)", 1), -1, 1);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == doctest::Approx(0.3).epsilon(1e-6));
  const auto f = zeros_1d(parse_expr("flatexp(x)*(x - 0.5)", 1), -1, 1);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == 0.0);
}

TEST_CASE("one-dimensional diffeomorphisms") {
  const Diffeo1D p = Diffeo1D::from_expr(parse_expr("x + x^3", 1), -2, 2);
  CHECK(p.inverse(p(0.7)) == doctest::Approx(0.7).epsilon(1e-13));
  CHECK(p.derivative(1.0) == doctest::Approx(4.0));
  CHECK(p.min_derivative() == doctest::Approx(1.0));
  const Diffeo1D q = compose(p, Diffeo1D::from_expr(parse_expr("2*x", 1), -1, 1));
  CHECK(q(0.5) == doctest::Approx(2.0));
  const Diffeo1D inv = inverse_diffeo(p);
  CHECK(inv(p(-1.3)) == doctest::Approx(-1.3));
  const Diffeo1D c = Diffeo1D::circle_lift([](double x) { return x + 0.5; }, {}, 3.0, "rot");
  CHECK(c.circle_value(2.75) == doctest::Approx(0.25));
}

}
