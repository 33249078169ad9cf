#include <doctest.h>

#include <cmath>
#include <random>

#include "jacobiflow/config_space.hpp"
#include "jacobiflow/diffeo_factory.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

using namespace jacobiflow;

TEST_SUITE("diffeo_factory") {

TEST_CASE("bump profile") {
  CHECK(bump_alpha(0, 1, 0.0) == 0.0);
  CHECK(bump_alpha(0, 1, 1.0) == 0.0);
  CHECK(bump_alpha(0, 1, 1.5) == 0.0);
  CHECK(bump_alpha(0, 1, 0.5) == doctest::Approx(std::exp(-4.0)));
  CHECK(bump_alpha(0, 2, 1.0) == doctest::Approx(std::exp(-1.0) / 2));
  CHECK(bump_gamma(0, 1, 0.0) == 0.0);
  CHECK(bump_gamma(0, 1, -1.0) < 0);
  CHECK(bump_gamma(0, 1, 1.0) > 0);
}

TEST_CASE("gamma inverse and q integrate to the prescribed gap") {
  for (double y : {-0.9, -0.3, 0.0, 0.4, 2.5}) {
    const double c = bump_gamma_inverse(0, 1, y);
    CHECK(bump_gamma(0, 1, c) == doctest::Approx(y).epsilon(1e-9));
  }
  CHECK(bump_q(0, 1, 0.3, 1.0) == 0.0);
  for (double s : {0.2, 1.7}) {
    const double area = numerics::integrate([s](double t) { return bump_q(0, 1, t, s); }, 0, 1, 1e-12).value;
    CHECK(area == doctest::Approx(s - 1).epsilon(1e-9));
  }
}

TEST_CASE("interpolation data is met") {
  const InterpolatingDiffeo id({1, 2, 3});
  for (double t : numerics::linspace(-1, 5, 61)) CHECK(id(t) == doctest::Approx(t).epsilon(1e-12));
  const InterpolatingDiffeo phi = build_phi_n({1, 2.5, 3});
  CHECK(std::abs(phi(2) - 2.5) <= 1e-6);
  CHECK(std::abs(phi(1) - 1) <= 1e-6);
  CHECK(phi(-1) == -1.0);
  CHECK(phi(0) == 0.0);
  CHECK(phi(4.5) == 4.5);
  CHECK(phi.n() == 3);
  CHECK(phi.values() == std::vector<double>{1, 2.5, 3});
}

TEST_CASE("invalid interpolation data") {
  CHECK_THROWS_AS(InterpolatingDiffeo({0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(InterpolatingDiffeo({2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(InterpolatingDiffeo({1.0, 3.0}), ValidationError);
}

TEST_CASE("random data: monotone and interpolating") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    std::uniform_real_distribution<double> u(0.05, n + 0.95);
    std::vector<double> x;
    while (static_cast<int>(x.size()) < n) {
      const double v = u(rng);
      bool ok = true;
      for (double w : x) ok = ok && std::abs(v - w) > 0.05;
      if (ok) x.push_back(v);
    }
    std::sort(x.begin(), x.end());
    const InterpolatingDiffeo phi(x);
    double prev = -INFINITY;
    for (double t : numerics::linspace(-0.5, n + 1.5, 400)) {
      CHECK(std::isfinite(phi.log_delta(t)));
      // monotone up to the quadrature tolerance of the evaluator
      const double v = phi(t);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    for (int k = 1; k <= n; ++k) CHECK(std::abs(phi(k) - x[k - 1]) <= 1e-6);
  }
}

TEST_CASE("tiny gaps keep a finite log rate") {
  const InterpolatingDiffeo phi({0.001, 0.002, 3.9});
  CHECK(std::abs(phi(1) - 0.001) <= 1e-6);
  CHECK(std::abs(phi(2) - 0.002) <= 1e-6);
  CHECK(std::abs(phi(3) - 3.9) <= 1e-6);
}

TEST_CASE("line sections") {
  const Diffeo1D id = section_line(4, {2, 3});
  for (double t : numerics::linspace(0, 5, 51)) CHECK(std::abs(id(t) - t) <= 1e-12);
  const Diffeo1D s = section_line(4, {2.5, 3});
  CHECK(std::abs(s(2) - 2.5) <= 1e-6);
  CHECK(std::abs(s(3) - 3) <= 1e-6);
  CHECK(std::abs(s(1) - 1) <= 1e-6);
  CHECK(std::abs(s(4) - 4) <= 1e-6);
  const Diffeo1D three = section_line(3, {2.0});
  for (double t : numerics::linspace(0, 4, 41)) CHECK(std::abs(three(t) - t) <= 1e-6);
}

TEST_CASE("circle sections") {
  const Diffeo1D id = section_circle(4, {1, 2, 3}, 0.0);
  for (double t : numerics::linspace(0, 4, 41)) CHECK(std::abs(id.circle_value(t) - std::fmod(t, 4.0)) <= 1e-9);
  const Diffeo1D c = section_circle(3, {0.8, 2.1}, 1.25);
  // continuous across the seam
  const double seam = std::abs(mod_n(c(3.0 - 1e-12) - c(0.0), 3));
  CHECK(std::min(seam, 3 - seam) <= 1e-8);
  const ConfigPoint<double> p = evaluation_map(c, 3);
  CHECK(p.coords[0] == doctest::Approx(2.05));
  CHECK(p.coords[1] == doctest::Approx(0.35));
  CHECK(p.coords[2] == doctest::Approx(1.25));
  // rotating by n/2 shifts every evaluation by n/2
  const ConfigPoint<double> q = evaluation_map(section_circle(3, {0.8, 2.1}, 1.25 + 1.5), 3);
  for (int k = 0; k < 3; ++k) CHECK(mod_n(q.coords[k] - p.coords[k], 3) == doctest::Approx(1.5));
}

TEST_CASE("contraction to the identity") {
  const Diffeo1D phi = Diffeo1D::from_expr(parse_expr("2*x", 1), -1, 1);
  CHECK(contract_to_identity(phi, 0)(0.7) == doctest::Approx(0.7));
  CHECK(contract_to_identity(phi, 1)(0.7) == doctest::Approx(1.4));
  const Diffeo1D mid = contract_to_identity(phi, 0.5);
  CHECK(mid(0.4) == doctest::Approx(0.6));
  CHECK(mid.derivative(0.2) == doctest::Approx(1.5));
  CHECK_THROWS_AS(contract_to_identity(phi, 1.5), ValidationError);
}

}
