#include <doctest.h>

#include <cmath>

#include "jacobiflow/conjugator.hpp"
#include "jacobiflow/error.hpp"

using namespace jacobiflow;

namespace {
Diffeo1D D(const char* text, double lo, double hi) { return Diffeo1D::from_expr(parse_expr(text, 1), lo, hi); }
const char* kPhi3 = "x + 0.01*(x-1)*(x-2)*(x-3)";
}  // namespace

TEST_SUITE("global_lift") {

TEST_CASE("boundary-only model lifts to phi") {
  const ModelFunction1D m = parse_model("f: x\ndomain: 1 2\nlevels: 2\n");
  const Diffeo1D phi = D("x + 0.1*(x-1)*(x-2)", 1, 2);
  const GlobalLiftReport r = lift_global_1d(m, phi);
  CHECK(r.residual <= 1e-8);
  for (std::size_t i = 0; i < r.grid.size(); ++i) CHECK(std::abs(r.h_values[i] - phi(r.grid[i])) <= 1e-8);
}

TEST_CASE("identity lifts to the identity") {
  const GlobalLiftReport r = lift_global_1d(one_minimum_model(), D("x", 1, 3));
  for (std::size_t i = 0; i < r.grid.size(); ++i) CHECK(std::abs(r.h_values[i] - r.grid[i]) <= 1e-12);
}

TEST_CASE("one-minimum model glues coherently") {
  const ModelFunction1D m = one_minimum_model();
  CHECK(m.f({m.lo}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.f({m.hi}) == doctest::Approx(3.0));
  const GlobalLiftReport r = lift_global_1d(m, D(kPhi3, 1, 3));
  CHECK(r.residual <= 1e-6);
  CHECK(r.coherency_lower <= 1e-6);
  CHECK(r.coherency_upper <= 1e-6);
  CHECK(r.level_fixity <= 1e-8);
  CHECK(r.window_samples > 0);
  REQUIRE(r.level_points.size() == 5);
  CHECK(r.level_points[2].x == doctest::Approx(1.0));
  CHECK(r.level_points[2].level == 3);
  CHECK(r.level_points[2].order == 2);
  CHECK(r.level_points[3].x == doctest::Approx(2.0));
  CHECK(r.level_points[3].level == 2);
  // h is a genuine function: phi(f(x)) = f(h(x)) off the grid as well
  for (double x : {0.4, 0.77, 1.5, 2.01, 2.4}) CHECK(std::abs(m.f({r.h(x)}) - D(kPhi3, 1, 3)(m.f({x}))) <= 1e-6);
}

TEST_CASE("unequal rates still glue with the 1/eps flow time") {
  ModelFunction1D m = one_minimum_model();
  m.eps = {2, 0.5, 2};
  const GlobalLiftReport r = lift_global_1d(m, D(kPhi3, 1, 3));
  CHECK(r.residual <= 1e-6);
  CHECK(std::max(r.coherency_lower, r.coherency_upper) <= 1e-6);
}

TEST_CASE("flow time as printed fails for eps = 2") {
  ModelFunction1D m = one_minimum_model();
  m.eps = {2, 2, 2};
  GlobalLiftOptions opt;
  opt.prefactor = LevelPrefactor::as_printed;
  opt.strict = false;
  const GlobalLiftReport r = lift_global_1d(m, D(kPhi3, 1, 3), opt);
  CHECK(r.residual > 1e-3);
  CHECK(std::max(r.coherency_lower, r.coherency_upper) > 1e-3);
  opt.strict = true;
  CHECK_THROWS_AS(lift_global_1d(m, D(kPhi3, 1, 3), opt), ValidationError);
}

TEST_CASE("phi must fix the levels") {
  CHECK_THROWS_AS(lift_global_1d(one_minimum_model(), D("x + 0.01*(x-1)*(x-3)", 1, 3)), ValidationError);
}

TEST_CASE("model file parsing") {
  const ModelFunction1D m = parse_model(
      "# comment line\n"
      "f: 2*x^3 - 9*x^2 + 12*x - 2\n"
      "domain: 0.3223 2.5\n"
      "levels: 3\n"
      "eps: 1 2 1\n");
  CHECK(m.n == 3);
  CHECK(m.eps == std::vector<double>{1, 2, 1});
  CHECK(m.f({m.lo}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.lo == doctest::Approx(one_minimum_model().lo).epsilon(1e-12));
  CHECK(parse_model("f: x\ndomain: 1 2\nlevels: 2\n").eps == std::vector<double>{1, 1});
  CHECK_THROWS_AS(parse_model("f: x\ndomain: 1\nlevels: 2\n"), ParseError);
  CHECK_THROWS_AS(parse_model("f: x\nlevels: 2\n"), ParseError);
  CHECK_THROWS_AS(parse_model("g: x\n"), ParseError);
}

}
