#include <doctest.h>

#include <cmath>

#include "jacobiflow/conjugator.hpp"
#include "jacobiflow/error.hpp"

using namespace jacobiflow;

namespace {

Diffeo1D D(const char* text, double lo = -1, double hi = 9) {
  return Diffeo1D::from_expr(parse_expr(text, 1), lo, hi);
}

LiftProblem round_problem(const char* phi, int grid = 21) {
  LiftProblem p;
  p.f = parse_expr("x^2 + y^2", 2);
  p.field = parse_field("x/2; y/2", 2);
  p.alpha = parse_expr("x", 1);
  p.phi = D(phi);
  p.box = Box::cube(2, -1, 1);
  p.grid = grid;
  return p;
}

}  // namespace

TEST_SUITE("conjugator") {

TEST_CASE("semiconjugacy of the flows") {
  const LiftProblem p = round_problem("2*x");
  CHECK(semiconjugacy_residual(p, 1.0) <= 1e-8);
  CHECK(semiconjugacy_residual(p, 0.0) == 0.0);
  LiftProblem wrong = p;
  wrong.field = parse_field("x; y", 2);
  CHECK(semiconjugacy_residual(wrong, 1.0) >= 0.1);
  CHECK_THROWS_AS(validate(wrong), ValidationError);
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("scaling phi lifts to a scaling") {
  const LiftReport r = lift_diffeo(round_problem("2*x"));
  CHECK(r.residual <= 1e-8);
  CHECK(r.embedding_holds);
  for (std::size_t i = 0; i < r.points.size(); ++i)
    for (int k = 0; k < 2; ++k) CHECK(std::abs(r.images[i][k] - std::sqrt(2.0) * r.points[i][k]) <= 1e-8);
}

TEST_CASE("identity lifts to the identity") {
  const LiftReport r = lift_diffeo(round_problem("x"));
  for (std::size_t i = 0; i < r.points.size(); ++i) CHECK(r.images[i] == r.points[i]);
  CHECK(r.residual == 0.0);
}

TEST_CASE("regular function lifts phi itself") {
  LiftProblem p;
  p.f = parse_expr("x", 1);
  p.field = parse_field("x", 1);
  p.alpha = parse_expr("x", 1);
  p.phi = D("x + x^2/4", -1.5, 1.5);
  p.box = Box::cube(1, -1, 1);
  p.grid = 41;
  const LiftReport r = lift_diffeo(p);
  CHECK(r.residual <= 1e-7);
  for (std::size_t i = 0; i < r.points.size(); ++i)
    CHECK(std::abs(r.images[i][0] - p.phi(r.points[i][0])) <= 1e-7);
}

TEST_CASE("lift is a homomorphism") {
  const LiftProblem p = round_problem("x");
  CHECK(lift_homomorphism_residual(p, D("2*x"), D("3*x", -1, 30)) <= 1e-7);
  CHECK(lift_homomorphism_residual(p, D("x + x^2/4"), D("x")) <= 1e-10);
  CHECK(lift_homomorphism_residual(p, D("2*x"), D("x/2")) <= 1e-7);
}

TEST_CASE("embedding margin stays positive for monotone phi") {
  const LiftReport r = lift_diffeo(round_problem("x + sin(x)/2"));
  CHECK(r.embedding_holds);
  CHECK(r.embedding_margin > 0);
  CHECK(r.residual <= 1e-7);
}

}
