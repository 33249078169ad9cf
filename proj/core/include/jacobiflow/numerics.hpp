#pragma once

#include <functional>
#include <span>
#include <vector>

namespace jacobiflow::numerics {

using ScalarFn = std::function<double(double)>;

struct RootResult {
  double x;
  int iterations;
};

/// Brent's method on a bracketing interval [a, b]. Stops when the bracket
/// is narrower than `xtol` (plus a few ulps) or the function vanishes.
/// Throws NumericalError when f(a), f(b) do not bracket a root.
RootResult brent(const ScalarFn& f, double a, double b, double xtol = 1e-12,
                 int max_iter = 200);

/// Bisection to full double resolution of a sign change of f on [a, b].
double bisect_sign_change(const ScalarFn& f, double a, double b);

/// Grows [lo, hi] geometrically away from `anchor` until f changes sign.
/// Returns the bracket; throws NumericalError after `max_doublings`.
std::pair<double, double> expand_bracket(const ScalarFn& f, double lo, double hi,
                                         int max_doublings = 80);

struct QuadratureResult {
  double value;
  double error;
  int evaluations;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with an absolute tolerance.
QuadratureResult integrate(const ScalarFn& f, double a, double b,
                           double abs_tol = 1e-10, int max_depth = 48);

struct Extrapolation {
  double value;
  double error;  // |difference of the two highest-order estimates|
};

/// Polynomial (Neville) extrapolation of samples v(h_k) to h = 0.
Extrapolation extrapolate_to_zero(std::span<const double> h,
                                  std::span<const double> v);

/// Evenly spaced points, endpoints included.
std::vector<double> linspace(double a, double b, int count);

}  // namespace jacobiflow::numerics
