#include <doctest.h>

#include <random>

#include "jacobiflow/config_space.hpp"
#include "jacobiflow/diffeo.hpp"

using namespace jacobiflow;

namespace {

// Sign of the permutation i -> i + d mod n by counting inversions.
Parity brute_parity(int n, int d) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = ((i + d) % n + n) % n;
  int inv = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
  return inv % 2 ? Parity::reverses : Parity::preserves;
}

}  // namespace

TEST_SUITE("config_space") {

TEST_CASE("split of the reference point") {
  const auto p = make_config<mpq_class>(3, {1, 2, 3});
  CHECK(p.coords[2] == 0);
  const auto s = split(p);
  CHECK(s.deltas == std::vector<mpq_class>{1, 2});
  CHECK(s.base == 0);
  const auto q = split(make_config<double>(2, {0.5, 1.5}));
  CHECK(q.deltas == std::vector<double>{1.0});
  CHECK(q.base == 1.5);
}

TEST_CASE("split and unsplit are exact inverses") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    std::uniform_int_distribution<int> num(1, 997);
    std::vector<mpq_class> gaps;
    mpq_class acc = 0;
    for (int i = 0; i < n - 1; ++i) {
      mpq_class g(num(rng), 1000 * n);
      g.canonicalize();
      acc += g;
      gaps.push_back(acc);
    }
    SplitPoint<mpq_class> s{n, gaps, mpq_class(num(rng), 1000) * n};
    s.base.canonicalize();
    const auto p = unsplit(s);
    CHECK(component_check(p));
    const auto back = split(p);
    CHECK(back.deltas == s.deltas);
    CHECK(back.base == mod_n(s.base, n));
    CHECK(unsplit(back).coords == p.coords);
  }
}

TEST_CASE("component membership") {
  CHECK(component_check(make_config<double>(3, {1, 2, 3})));
  CHECK_FALSE(component_check(make_config<double>(3, {2, 1, 0.5})));
  for (int r = 0; r < 5; ++r) CHECK(component_check(cyclic_shift(make_config<double>(5, {1, 2, 3, 4, 5}), r)));
  CHECK_THROWS_AS(split(make_config<double>(3, {2, 1, 0.5})), ValidationError);
  CHECK_THROWS_AS(make_config<double>(3, {1, 4, 2}), ValidationError);
  CHECK_THROWS_AS(make_config<double>(3, {1, 2}), ShapeError);
}

TEST_CASE("cyclic shifts form an action") {
  const auto p = make_config<mpq_class>(5, {mpq_class(1, 2), 1, 2, 3, mpq_class(9, 2)});
  for (int d1 = -3; d1 <= 6; ++d1)
    for (int d2 = 0; d2 <= 5; ++d2)
      CHECK(cyclic_shift(cyclic_shift(p, d1), d2).coords == cyclic_shift(p, d1 + d2).coords);
  CHECK(cyclic_shift(p, 5).coords == p.coords);
}

TEST_CASE("parity of cyclic shifts") {
  CHECK(shift_parity(2, 1) == Parity::reverses);
  CHECK(shift_parity(3, 1) == Parity::preserves);
  CHECK(shift_parity(4, 2) == Parity::preserves);
  for (int n = 1; n <= 10; ++n)
    for (int d = 0; d <= n; ++d) CHECK(shift_parity(n, d) == brute_parity(n, d));
  CHECK(to_string(Parity::reverses) == "reverses");
}

TEST_CASE("canonical rotation") {
  const auto p = make_config<double>(4, {2, 3, 0, 1});
  CHECK(canonical_rotation(p).coords == std::vector<double>{0, 1, 2, 3});
  CHECK(canonical_rotation(cyclic_shift(p, 3)).coords == canonical_rotation(p).coords);
}

TEST_CASE("mod n") {
  CHECK(mod_n(-0.5, 3) == 2.5);
  CHECK(mod_n(mpq_class(-7, 2), 3) == mpq_class(5, 2));
  CHECK(mod_n(6.0, 3) == 0.0);
  CHECK(mod_n(std::nextafter(3.0, 0.0), 3) < 3.0);
}

TEST_CASE("evaluation map") {
  const Diffeo1D id = Diffeo1D::circle_lift([](double x) { return x; }, {}, 4, "id");
  CHECK(evaluation_map(id, 4).coords == std::vector<double>{1, 2, 3, 0});
  const Diffeo1D rot = Diffeo1D::circle_lift([](double x) { return x + 0.75; }, {}, 4, "rot");
  const auto p = evaluation_map(rot, 4);
  CHECK(p.coords[0] == doctest::Approx(1.75));
  CHECK(p.coords[3] == doctest::Approx(0.75));
}

TEST_CASE("exceptional values") {
  auto ev = [](const char* f, double a, double b) { return exceptional_values(parse_expr(f, 1), a, b); };
  CHECK(ev("x", 0, 1) == std::vector<double>{0, 1});
  const auto sq = ev("x^2", -1, 1);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0] == doctest::Approx(0.0));
  CHECK(sq[1] == doctest::Approx(1.0));
  const auto cub = ev("x^3 - 3*x", -2, 2);
  REQUIRE(cub.size() == 2);
  CHECK(cub[0] == doctest::Approx(-2.0));
  CHECK(cub[1] == doctest::Approx(2.0));
  const auto circ = exceptional_values(parse_expr("sin(x)", 1), 0, 2 * M_PI, true);
  REQUIRE(circ.size() == 2);
  CHECK(circ[0] == doctest::Approx(-1.0));
  // degenerate critical point x = 0 of x^3 counts
  const auto deg = ev("x^3", -1, 1);
  CHECK(deg.size() == 3);
}

TEST_CASE("exceptional values transform under phi o f o h^-1") {
  // with h = id on [a, b] and phi monotone, the set maps to phi(set)
  const SmoothExpr f = parse_expr("x^3 - 3*x", 1);
  const SmoothExpr g = parse_expr("(x^3 - 3*x) + (x^3 - 3*x)^3/50", 1);
  const auto base = exceptional_values(f, -2.5, 1.7);
  const auto moved = exceptional_values(g, -2.5, 1.7);
  REQUIRE(base.size() == moved.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(std::abs(moved[i] - (base[i] + std::pow(base[i], 3) / 50)) <= 1e-8);
}

}
