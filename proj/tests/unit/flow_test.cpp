#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jacobiflow/diffeo.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/flow.hpp"

using namespace jacobiflow;

namespace {
Diffeo1D D(const char* text, double lo = -1.5, double hi = 1.5) {
  return Diffeo1D::from_expr(parse_expr(text, 1), lo, hi);
}
}  // namespace

TEST_SUITE("flow") {

TEST_CASE("linear flows match closed forms") {
  const FlowSpec lin = FlowSpec::one_dim(parse_expr("x", 1), -10, 10);
  CHECK(integrate_flow_1d(lin, 1.0, std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integrate_flow_1d(lin, 0.37, 0.0) == 0.37);

  FlowSpec half{parse_field("x/2; y/2", 2), Box::cube(2, -5, 5), {}};
  const std::vector<double> x0 = {1.0, 1.0};
  const auto x = integrate_flow(half, x0, 2.0);
  CHECK(std::abs(x[0] - std::numbers::e) <= 1e-8);
  CHECK(std::abs(x[1] - std::numbers::e) <= 1e-8);
}

TEST_CASE("leaving the box raises FlowError") {
  const FlowSpec quad = FlowSpec::one_dim(parse_expr("x^2", 1), -2, 2);
  CHECK_THROWS_AS(integrate_flow_1d(quad, 1.0, 0.9), FlowError);
  // s / (1 - s t) stays inside for s t < 1/2
  CHECK(integrate_flow_1d(quad, 1.0, 0.4) == doctest::Approx(1.0 / 0.6).epsilon(1e-10));
}

TEST_CASE("flow factor c(s, t)") {
  CHECK(std::abs(flow_factor_c(parse_expr("x^2", 1), 0.0, 0.5) - 1.0) <= 1e-6);
  CHECK(std::abs(flow_factor_c(parse_expr("x^3", 1), 0.0, 0.1) - 1.0) <= 1e-6);
  CHECK(std::abs(flow_factor_c(parse_expr("x", 1), 0.0, 1.0) - (std::numbers::e - 1)) <= 1e-6);
  CHECK(std::abs(flow_factor_c(parse_expr("x^2 + 1", 1), 0.3, 0.0) - 1.0) <= 1e-6);
  // closed form for alpha = s: c(s, t) = (e^t - 1) / t at every s != 0
  CHECK(flow_factor_c(parse_expr("x", 1), 0.7, 0.5) == doctest::Approx((std::exp(0.5) - 1) / 0.5));
}

TEST_CASE("classify alpha") {
  CHECK(classify_alpha(parse_expr("x", 1)) == AlphaCase::a);
  CHECK(classify_alpha(parse_expr("x^3 + x^2", 1)) == AlphaCase::b);
  CHECK_THROWS_AS(classify_alpha(parse_expr("x + 1", 1)), ValidationError);
  CHECK_THROWS_AS(classify_alpha(parse_expr("2*x", 1)), ValidationError);
}

TEST_CASE("shift functions with closed forms") {
  const ShiftFunction a = shift_function(D("2*x"), parse_expr("x", 1), -1, 1);
  for (double v : a.values) CHECK(std::abs(v - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(a.sigma_at_zero - std::log(2.0)) <= 1e-9);

  const ShiftFunction id = shift_function(D("x"), parse_expr("x^2", 1), -1, 1);
  for (double v : id.values) CHECK(std::abs(v) <= 1e-12);

  const ShiftFunction q = shift_function(D("x/(1 - x)", -0.9, 0.9), parse_expr("x^2", 1), -0.5, 0.5);
  for (double v : q.values) CHECK(std::abs(v - 1.0) <= 1e-8);
  CHECK(q.verification_residual <= 1e-8);
}

TEST_CASE("composition and inverse of shifts") {
  const SmoothExpr alpha = parse_expr("x", 1);
  const ShiftFunction p = shift_function(D("2*x"), alpha, -0.5, 0.5);
  const ShiftFunction q = shift_function(D("3*x"), alpha, -1, 1);
  const ShiftFunction pq = shift_compose(p, q);
  for (double v : pq.values) CHECK(std::abs(v - std::log(6.0)) <= 1e-8);
  const ShiftFunction inv = shift_invert(p);
  for (double v : inv.values) CHECK(std::abs(v + std::log(2.0)) <= 1e-8);
  const ShiftFunction e = shift_compose(p, shift_function(D("x"), alpha, -1, 1));
  for (std::size_t i = 0; i < e.values.size(); ++i) CHECK(std::abs(e.values[i] - p.values[i]) <= 1e-12);
}

TEST_CASE("composition law on random-looking pairs") {
  // property: sigma_{psi o phi}(s) = sigma_phi(s) + sigma_psi(phi(s))
  const SmoothExpr alpha = parse_expr("x^3 + x^2", 1);
  const Diffeo1D phi = D("x + (x^3 + x^2)/4"), psi = D("x - (x^3 + x^2)/10");
  const ShiftFunction sp = shift_function(phi, alpha, -0.5, 0.5);
  const ShiftFunction sq = shift_function(psi, alpha, -0.6, 0.6);
  const ShiftFunction direct = shift_function(compose(psi, phi), alpha, -0.5, 0.5);
  for (std::size_t i = 0; i < sp.grid.size(); i += 7) {
    const double s = sp.grid[i];
    CHECK(std::abs(direct.values[i] - (sp.values[i] + sq.sigma(phi(s)))) <= 1e-7);
  }
}

TEST_CASE("membership in V(alpha)") {
  CHECK(v_membership(D("x + x^3"), parse_expr("x^2", 1)) == Tristate::yes);
  CHECK(v_membership(D("x + x^2"), parse_expr("x^3", 1)) == Tristate::no);
  CHECK(v_membership(D("x"), parse_expr("x^2 + x^3", 1)) == Tristate::yes);
  CHECK(to_string(Tristate::indeterminate) == "indeterminate");
}

TEST_CASE("h_V") {
  CHECK(std::abs(h_V(D("x"), parse_expr("x^2", 1))) <= 1e-12);
  CHECK(std::abs(h_V(D("x/(1 - x)", -0.9, 0.9), parse_expr("x^2", 1)) - 1.0) <= 1e-8);
  CHECK_THROWS_AS(h_V(D("x + x^2"), parse_expr("x^3", 1)), ValidationError);
}

TEST_CASE("embedding criterion") {
  const Box box = Box::cube(1, -1, 1);
  const VectorFieldExpr dds = parse_field("1", 1);
  CHECK(embedding_criterion(SmoothExpr::constant(1, 3), dds, box, 21).holds);
  const EmbeddingReport rev = embedding_criterion(parse_expr("-2*x", 1), dds, box, 21);
  CHECK_FALSE(rev.holds);
  CHECK(rev.margin == doctest::Approx(-1.0));
  const EmbeddingReport flat = embedding_criterion(parse_expr("-x", 1), dds, box, 21);
  CHECK_FALSE(flat.holds);
  CHECK(flat.margin == doctest::Approx(0.0));
}

TEST_CASE("integrate_ode with t = 0 returns the start point") {
  const std::vector<double> x0 = {0.3, -0.2};
  const OdeRhs rhs = [](std::span<const double> x, std::span<double> dx) {
    dx[0] = x[1];
    dx[1] = -x[0];
  };
  CHECK(integrate_ode(rhs, x0, 0.0, nullptr) == x0);
  const auto x = integrate_ode(rhs, x0, std::numbers::pi, nullptr);
  CHECK(std::abs(x[0] + 0.3) <= 1e-9);
  CHECK(std::abs(x[1] - 0.2) <= 1e-9);
}

}
