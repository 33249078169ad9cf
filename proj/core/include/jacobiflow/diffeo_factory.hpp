#pragma once

#include <vector>

#include "jacobiflow/diffeo.hpp"

namespace jacobiflow {

/// alpha(t) = (b-a)^{-1} e^{-1/((t-a)(b-t))} on (a, b), 0 elsewhere.
double bump_alpha(double a, double b, double t);
/// gamma(c) = int_a^b (e^{c alpha(t)} - 1) dt, strictly increasing from
/// -(b-a) to +infinity.
double bump_gamma(double a, double b, double c);
/// Solves gamma(c) = y for y > -(b-a).
double bump_gamma_inverse(double a, double b, double y);

/// Non-negative-plus-one bump: q(t, s) = e^{c alpha(t)} - 1 with
/// c = gamma^{-1}(s - (b-a)), so q vanishes off (a, b) and integrates to
/// s - (b-a). Requires s > 0.
double bump_q(double a, double b, double t, double s);

/// phi(x, t) = int_0^t delta with delta = 1 + sum_k q_{k,k+1}(t, x_{k+1} - x_k),
/// x_0 = 0 and x_{n+1} = n + 1. It maps k to x_k and is the identity off
/// [0, n+1]. The solved rates are cached at construction.
class InterpolatingDiffeo {
 public:
  /// x must satisfy 0 < x_1 < ... < x_n < n + 1.
  explicit InterpolatingDiffeo(std::vector<double> x);

  int n() const noexcept { return static_cast<int>(x_.size()) - 2; }
  /// Prescribed values x_1..x_n.
  std::vector<double> values() const { return {x_.begin() + 1, x_.end() - 1}; }
  /// w_k with bump rate c_k = sinh(w_k); |c_k| can exceed double range.
  const std::vector<double>& rate_params() const noexcept { return w_; }

  double operator()(double t) const;
  double delta(double t) const;
  /// ln delta(t); finite wherever delta itself underflows.
  double log_delta(double t) const;

  Diffeo1D as_diffeo() const;

 private:
  std::vector<double> x_;  // x_0 .. x_{n+1}
  std::vector<double> w_;  // rate parameter of the bump on [k, k+1]
};

InterpolatingDiffeo build_phi_n(const std::vector<double>& x);

/// Section over Delta^{n-2}: x = (x_2, .., x_{n-1}) with 1 < x_2 < .. < x_{n-1} < n.
/// The result fixes 1 and n and sends k to x_k.
Diffeo1D section_line(int n, const std::vector<double>& x);

/// Section over Delta^{n-1} x S^1 with S^1 = R / nZ: x = (x_2, .., x_n) with
/// 0 < x_2 < .. < x_n < n. The circle map is tau -> phi(x, tau) + shift mod n
/// where phi is the interval construction for the n-1 values x.
Diffeo1D section_circle(int n, const std::vector<double>& x, double shift);

/// x -> (1-t) x + t phi(x), t in [0, 1]. Throws ValidationError when phi'
/// is not positive on a 1001-point grid.
Diffeo1D contract_to_identity(const Diffeo1D& phi, double t);

}  // namespace jacobiflow
