#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobiflow/error.hpp"
#include "jacobiflow/flow.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kLimitSamples = 6;

// The quadrature endpoint phi(s) carries a rounding error of about eps*|s|;
// divided by alpha(s) that is the error it induces in sigma.
bool resolvable(double s, double as) {
  return as != 0.0 && 4 * kEps * std::max(std::abs(s), 1e-300) / std::abs(as) <= 1e-9;
}

double sigma_regular(const SmoothExpr& alpha, const Diffeo1D& phi, double s, double tol) {
  const double ps = phi(s);
  if (ps == s) return 0.0;
  const double sign = alpha({s}) > 0 ? 1.0 : -1.0;
  for (double z : numerics::linspace(s, ps, 33)) {
    const double az = alpha({z});
    if (az == 0.0 || (az > 0 ? 1.0 : -1.0) != sign)
      throw ValidationError("alpha vanishes between s=" + std::to_string(s) + " and phi(s)=" +
                            std::to_string(ps) + "; phi is not a shift along alpha");
  }
  auto inv = [&alpha](double z) { return 1.0 / alpha({z}); };
  return numerics::integrate(inv, s, ps, tol).value;
}

double one_sided_limit(const SmoothExpr& alpha, const Diffeo1D& phi, double s0, double step,
                       double tol, bool& ok) {
  std::vector<double> hs, vs;
  try {
    for (int j = 0; j < kLimitSamples; ++j) {
      const double h = step * std::ldexp(1.0, -j);
      hs.push_back(std::abs(h));
      vs.push_back(sigma_regular(alpha, phi, s0 + h, tol));
    }
  } catch (const Error&) {
    ok = false;
    return 0.0;
  }
  const auto ex = numerics::extrapolate_to_zero(hs, vs);
  ok = ex.error <= 1e-6 * std::max(1.0, std::abs(ex.value));
  return ex.value;
}

std::function<double(double)> make_sigma(const SmoothExpr& alpha, const Diffeo1D& phi,
                                         const ShiftOptions& opt) {
  return [alpha, phi, opt](double s) {
    const double as = alpha({s});
    if (resolvable(s, as)) return sigma_regular(alpha, phi, s, opt.quad_tol);
    if (as == 0.0 && std::abs(phi(s) - s) > 1e-10 * std::max(1.0, std::abs(s)))
      throw ValidationError("phi moves s=" + std::to_string(s) +
                            " although alpha vanishes there; phi is not in V(alpha)");
    bool ok_r = false, ok_l = false;
    const double right = one_sided_limit(alpha, phi, s, opt.limit_step, opt.quad_tol, ok_r);
    const double left = one_sided_limit(alpha, phi, s, -opt.limit_step, opt.quad_tol, ok_l);
    if (ok_r && ok_l) {
      if (std::abs(right - left) > 1e-6 * std::max(1.0, std::abs(right)))
        throw NumericalError("one-sided limits of sigma at s=" + std::to_string(s) +
                             " disagree: " + std::to_string(left) + " vs " +
                             std::to_string(right));
      return 0.5 * (right + left);
    }
    if (ok_r) return right;
    if (ok_l) return left;
    throw NumericalError("sigma at s=" + std::to_string(s) + " did not settle under extrapolation");
  };
}

// max |Phi(s, sigma(s)) - target(s)| over grid points where alpha is nonzero.
double verify(const SmoothExpr& alpha, const std::function<double(double)>& target,
              const std::vector<double>& grid, const std::vector<double>& values,
              const FlowOptions& flow) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ts = target(grid[i]);
    lo = std::min({lo, grid[i], ts});
    hi = std::max({hi, grid[i], ts});
  }
  const double pad = 1.0 + (hi - lo);
  const FlowSpec spec = FlowSpec::one_dim(alpha, lo - pad, hi + pad, flow);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    if (alpha({s}) == 0.0) continue;
    worst = std::max(worst, std::abs(integrate_flow_1d(spec, s, values[i]) - target(s)));
  }
  return worst;
}

ShiftFunction finish(ShiftFunction sf, const std::function<double(double)>& target,
                     const ShiftOptions& opt) {
  sf.grid = numerics::linspace(sf.a, sf.b, opt.points);
  sf.values.clear();
  for (double s : sf.grid) sf.values.push_back(sf.sigma(s));
  sf.sigma_at_zero = (sf.a <= 0.0 && 0.0 <= sf.b) ? sf.sigma(0.0) : std::nan("");
  sf.verification_residual = verify(sf.alpha, target, sf.grid, sf.values, opt.flow);
  if (!(sf.verification_residual <= opt.verify_tol))
    throw ValidationError("shift function fails Phi(s, sigma(s)) = phi(s): residual " +
                          std::to_string(sf.verification_residual));
  return sf;
}

}  // namespace

ShiftFunction shift_function(const Diffeo1D& phi, const SmoothExpr& alpha, double a, double b,
                             const ShiftOptions& options) {
  if (alpha.arity() != 1) throw ShapeError("alpha must have one variable");
  if (!(a < b)) throw ShapeError("empty interval");
  for (double s : numerics::linspace(a, b, options.points))
    if (!(phi.derivative(s) > 0)) throw ValidationError("phi is not orientation-preserving");
  ShiftFunction sf;
  sf.alpha = alpha;
  sf.phi = phi;
  sf.a = a;
  sf.b = b;
  sf.sigma = make_sigma(alpha, phi, options);
  if (phi.expr()) sf.g = (*phi.expr() - SmoothExpr::variable(1, 0)) / alpha;
  return finish(std::move(sf), [phi](double s) { return phi(s); }, options);
}

ShiftFunction shift_compose(const ShiftFunction& phi, const ShiftFunction& psi,
                            const ShiftOptions& options) {
  ShiftFunction sf;
  sf.alpha = phi.alpha;
  sf.phi = compose(psi.phi, phi.phi);
  sf.a = phi.a;
  sf.b = phi.b;
  auto sp = phi.sigma;
  auto sq = psi.sigma;
  const Diffeo1D inner = phi.phi;
  sf.sigma = [sp, sq, inner](double s) { return sp(s) + sq(inner(s)); };
  const Diffeo1D target = sf.phi;
  return finish(std::move(sf), [target](double s) { return target(s); }, options);
}

ShiftFunction shift_invert(const ShiftFunction& psi, const ShiftOptions& options) {
  ShiftFunction sf;
  sf.alpha = psi.alpha;
  sf.phi = inverse_diffeo(psi.phi);
  sf.a = psi.phi(psi.a);
  sf.b = psi.phi(psi.b);
  auto sq = psi.sigma;
  const Diffeo1D inv = sf.phi;
  sf.sigma = [sq, inv](double s) { return -sq(inv(s)); };
  return finish(std::move(sf), [inv](double s) { return inv(s); }, options);
}

double h_V(const Diffeo1D& phi, const SmoothExpr& alpha, const ShiftOptions& options) {
  const Tristate t = v_membership(phi, alpha);
  if (t != Tristate::yes)
    throw ValidationError("phi is not verified to lie in V(alpha) (membership " + to_string(t) +
                          ")");
  return make_sigma(alpha, phi, options)(0.0);
}

}  // namespace jacobiflow
