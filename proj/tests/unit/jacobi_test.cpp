#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jacobiflow/error.hpp"
#include "jacobiflow/jacobi.hpp"

using namespace jacobiflow;

namespace {
TruncSeries S(const char* text, int vars, int degree) { return series_from_expr(parse_expr(text, vars), degree); }

// target - sum df/dx_i F_i with the returned witness, recomputed here.
TruncSeries recheck(const TruncSeries& f, const MembershipResult& r) {
  TruncSeries acc = r.target;
  for (int i = 0; i < f.arity(); ++i) acc = acc - series_partial(f, i) * (*r.witness)[i];
  return acc;
}
}  // namespace

TEST_SUITE("jacobi") {

TEST_CASE("x^2 is a member with witness x/2") {
  const TruncSeries f = S("x^2", 1, 8);
  const MembershipResult r = solve_membership(f);
  CHECK(r.status == MembershipStatus::member);
  REQUIRE(r.witness);
  CHECK((*r.witness)[0] == S("x/2", 1, 8));
  CHECK(r.residual.is_zero());
}

TEST_CASE("zero germ is a member with zero witness") {
  const MembershipResult r = solve_membership(TruncSeries(2, 6));
  CHECK(r.status == MembershipStatus::member);
  REQUIRE(r.witness);
  for (const auto& w : *r.witness) CHECK(w.is_zero());
}

TEST_CASE("homogeneous cubic agrees with the Euler field") {
  const TruncSeries f = S("x^2*y + y^3", 2, 8);
  const MembershipResult r = solve_membership(f);
  CHECK(r.status == MembershipStatus::member);
  CHECK(recheck(f, r).is_zero());
  const TruncSeries euler = series_partial(f, 0) * S("x/3", 2, 8) + series_partial(f, 1) * S("y/3", 2, 8);
  CHECK(euler == f);
}

TEST_CASE("quasi-homogeneous x^2*y is a member") {
  const TruncSeries f = S("x^2*y", 2, 6);
  const MembershipResult r = solve_membership(f);
  CHECK(r.status == MembershipStatus::member);
  CHECK(recheck(f, r).is_zero());
}

TEST_CASE("non-quasi-homogeneous germ is not a member") {
  // x^5 + y^5 + x^2 y^2 has an isolated singularity and no weights making it homogeneous
  const MembershipResult r = solve_membership(S("x^5 + y^5 + x^2*y^2", 2, 10));
  CHECK(r.status == MembershipStatus::non_member_up_to_N);
  CHECK_FALSE(r.witness);
  CHECK(to_string(r.status) == "non_member_up_to_N");
}

TEST_CASE("powers of f") {
  const MembershipResult a = solve_power_membership(S("x", 1, 8), 3);
  CHECK(a.status == MembershipStatus::member);
  REQUIRE(a.witness);
  CHECK((*a.witness)[0] == S("x^3", 1, 8));
  const TruncSeries f2 = S("x^2", 1, 8);
  const MembershipResult b = solve_power_membership(f2, 2);
  CHECK(b.status == MembershipStatus::member);
  CHECK(recheck(f2, b).is_zero());
  CHECK(solve_power_membership(TruncSeries(1, 4), 1).status == MembershipStatus::member);
}

TEST_CASE("alpha(f) membership") {
  const TruncSeries f = S("x^2 + y^3", 2, 8);
  const MembershipResult r = solve_alpha_membership(f, S("x^2", 1, 8));
  CHECK(r.status == MembershipStatus::member);
  CHECK(recheck(f, r).is_zero());
}

TEST_CASE("membership is invariant under coordinate changes") {
  const std::vector<const char*> germs = {"x^2*y + y^3", "x^3 + y^4", "x^2 + y^2", "x^3 + x*y^3"};
  const std::vector<SmoothExpr> h = {parse_expr("x + y^2", 2), parse_expr("y + x*y - x^2/3", 2)};
  for (const char* g : germs) {
    const SmoothExpr f = parse_expr(g, 2);
    REQUIRE(solve_membership(series_from_expr(f, 8)).status == MembershipStatus::member);
    const MembershipResult moved = solve_membership(series_from_expr(substitute(f, h), 8));
    CHECK(moved.status == MembershipStatus::member);
  }
}

TEST_CASE("power membership survives phi(s) = s + s^2") {
  for (const char* g : {"x^2 + y^3", "x^3 + y^3", "x^2*y + y^4"}) {
    const SmoothExpr f = parse_expr(g, 2);
    const SmoothExpr pf = f + f * f;
    for (int k = 1; k <= 2; ++k) {
      if (solve_power_membership(series_from_expr(f, 8), k).status != MembershipStatus::member) continue;
      CHECK(solve_power_membership(series_from_expr(pf, 8), k).status == MembershipStatus::member);
    }
  }
}

TEST_CASE("closed-form fields") {
  const Box box = Box::cube(2, -1, 1);
  const SmoothExpr h = parse_expr("x^2 + y^2", 2);
  const VectorFieldExpr F = closed_form_field(h, FieldFamily::homogeneous_of(2));
  CHECK(F[0]({0.6, 0.0}) == doctest::Approx(0.3));
  CHECK(max_abs_on_grid(directional_derivative(h, F) - h, box, 11) <= 1e-12);

  const VectorFieldExpr R = closed_form_field(parse_expr("x1", 2), FieldFamily::regular_point());
  CHECK(R[0]({0.4, 0.9}) == doctest::Approx(0.4));
  CHECK(R[1]({0.4, 0.9}) == 0.0);

  const SmoothExpr e7 = parse_expr("x^3 + x*y^3", 2);
  const VectorFieldExpr C = closed_form_field(e7, FieldFamily::chain_of({3, 3}, {1}));
  CHECK(C[0]({0.9, 0.3}) == doctest::Approx(0.3));
  CHECK(C[1]({0.9, 0.9}) == doctest::Approx(0.2));
  CHECK(max_abs_on_grid(directional_derivative(e7, C) - e7, box, 11) <= 1e-12);

  const SmoothExpr b = parse_expr("x^2 - y^4", 2);
  const VectorFieldExpr B = closed_form_field(b, FieldFamily::brieskorn_of({2, 4}, {1, -1}));
  CHECK(max_abs_on_grid(directional_derivative(b, B) - b, box, 11) <= 1e-12);
  CHECK_THROWS_AS(closed_form_field(parse_expr("x^2 + y^3", 2), FieldFamily::homogeneous_of(2)),
                  ValidationError);
}

TEST_CASE("sum and derived fields") {
  const Box box = Box::cube(2, -1, 1);
  auto [H, HF] = combine_sum_field(parse_expr("x^3", 1), parse_field("x/3", 1), parse_expr("x^4", 1),
                                   parse_field("x/4", 1));
  CHECK(max_abs_on_grid(H - parse_expr("x^3 + y^4", 2), box, 7) == 0.0);
  CHECK(max_abs_on_grid(directional_derivative(H, HF) - H, box, 11) <= 1e-10);

  auto [Z, ZF] = combine_sum_field(SmoothExpr::constant(1, 0), parse_field("0", 1), parse_expr("x^2", 1),
                                   parse_field("x/2", 1));
  CHECK(ZF[0]({0.3, 0.5}) == 0.0);
  CHECK(ZF[1]({0.3, 0.5}) == doctest::Approx(0.25));

  const DerivedField p = derived_field_power(parse_expr("x^2", 1), parse_field("x/2", 1), 2);
  CHECK(p.f({0.5}) == doctest::Approx(0.0625));
  CHECK(p.field[0]({0.5}) == doctest::Approx(0.125));
  const DerivedField one = derived_field_power(parse_expr("x^2", 1), parse_field("x/2", 1), 1);
  CHECK(one.field[0]({0.5}) == doctest::Approx(0.25));

  const DerivedField fl = derived_field_flat(parse_expr("x", 1), parse_field("x", 1));
  CHECK(fl.sign_adjusted);
  for (double x : {-0.9, -0.3, -0.01, 0.02, 0.4, 1.0}) {
    const double lhs = directional_derivative(fl.f, fl.field)({x});
    CHECK(lhs == doctest::Approx(fl.f({x})).epsilon(1e-10));
    CHECK(std::abs(fl.field[0]({x})) == doctest::Approx(x * x));
  }
}

TEST_CASE("accumulation obstruction") {
  const FlatOscillation ex = flat_oscillation_example();
  const ObstructionReport r = accumulation_obstruction(ex.f, ex.fprime, -0.5, 0.5);
  CHECK(r.obstructed);
  REQUIRE(r.certificate.size() >= 3);
  for (const auto& c : r.certificate) {
    const double n = std::round(1.0 / (std::numbers::pi * std::abs(c.p)));
    CHECK(std::abs(std::abs(c.p) - 1.0 / (std::numbers::pi * n)) <= 1e-6);
    CHECK(c.value != 0.0);
  }
  CHECK_FALSE(accumulation_obstruction(parse_expr("x^2", 1), -1, 1).obstructed);
  CHECK_FALSE(accumulation_obstruction(parse_expr("x^3 - 3*x", 1), -2, 2).obstructed);
}

}
