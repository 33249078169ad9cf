#include "jacobiflow/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

Diffeo1D Diffeo1D::from_expr(const SmoothExpr& e, double lo, double hi) {
  if (e.arity() != 1) throw ShapeError("diffeomorphism expression must have one variable");
  if (!(lo < hi)) throw ShapeError("empty domain interval");
  Diffeo1D d;
  d.lo_ = lo;
  d.hi_ = hi;
  d.value_ = [e](double x) { return e({x}); };
  const SmoothExpr de = derive(e, 0);
  d.derivative_ = [de](double x) { return de({x}); };
  d.expr_ = e;
  d.label_ = e.str();
  return d;
}

Diffeo1D Diffeo1D::from_functions(Fn value, Fn derivative, double lo, double hi,
                                  std::string label) {
  if (!(lo < hi)) throw ShapeError("empty domain interval");
  Diffeo1D d;
  d.lo_ = lo;
  d.hi_ = hi;
  d.value_ = std::move(value);
  d.derivative_ = std::move(derivative);
  d.label_ = std::move(label);
  return d;
}

Diffeo1D Diffeo1D::circle_lift(Fn lift, Fn derivative, double period, std::string label) {
  if (!(period > 0)) throw ShapeError("circle period must be positive");
  Diffeo1D d = from_functions(std::move(lift), std::move(derivative), 0.0, period,
                              std::move(label));
  d.domain_ = Domain::circle;
  return d;
}

Diffeo1D Diffeo1D::identity(double lo, double hi) {
  return from_expr(SmoothExpr::variable(1, 0), lo, hi);
}

double Diffeo1D::derivative(double x) const {
  if (derivative_) return derivative_(x);
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (value_(x + h) - value_(x - h)) / (2 * h);
}

double Diffeo1D::circle_value(double x) const {
  const double v = value_(x);
  const double p = period();
  double r = std::fmod(v, p);
  if (r < 0) r += p;
  if (r >= p) r -= p;
  return r;
}

double Diffeo1D::inverse(double y) const {
  auto g = [this, y](double x) { return value_(x) - y; };
  double a = lo_, b = hi_;
  if (g(a) > 0 || g(b) < 0) {
    // Target outside the image of the nominal domain: widen the bracket.
    std::tie(a, b) = numerics::expand_bracket(g, a, b);
  }
  const double tol = 4 * std::numeric_limits<double>::epsilon() *
                     std::max({1.0, std::abs(a), std::abs(b)});
  return numerics::brent(g, a, b, tol, 400).x;
}

double Diffeo1D::min_derivative(int samples) const {
  double m = std::numeric_limits<double>::infinity();
  for (double x : numerics::linspace(lo_, hi_, samples)) m = std::min(m, derivative(x));
  return m;
}

Diffeo1D compose(const Diffeo1D& outer, const Diffeo1D& inner) {
  Diffeo1D::Fn value = [outer, inner](double x) { return outer(inner(x)); };
  Diffeo1D::Fn deriv = [outer, inner](double x) {
    return outer.derivative(inner(x)) * inner.derivative(x);
  };
  const std::string label = "(" + outer.label() + ") o (" + inner.label() + ")";
  if (inner.domain() == Diffeo1D::Domain::circle)
    return Diffeo1D::circle_lift(value, deriv, inner.period(), label);
  Diffeo1D d = Diffeo1D::from_functions(value, deriv, inner.lo(), inner.hi(), label);
  return d;
}

Diffeo1D inverse_diffeo(const Diffeo1D& phi) {
  Diffeo1D::Fn value = [phi](double y) { return phi.inverse(y); };
  Diffeo1D::Fn deriv = [phi](double y) { return 1.0 / phi.derivative(phi.inverse(y)); };
  const std::string label = "inverse(" + phi.label() + ")";
  if (phi.domain() == Diffeo1D::Domain::circle)
    return Diffeo1D::circle_lift(value, deriv, phi.period(), label);
  return Diffeo1D::from_functions(value, deriv, phi(phi.lo()), phi(phi.hi()), label);
}

}  // namespace jacobiflow
