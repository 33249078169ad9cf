#include "jacobiflow/diffeo_factory.hpp"

#include <cmath>
#include <sstream>

#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

namespace {

constexpr double kQuadTol = 1e-12;

// The rate c = sinh(w) is carried as w: small gaps need |c| ~ e^{2/s}, far
// beyond double range, while ln|c| stays moderate.
double log_abs_rate(double w) {
  const double a = std::abs(w);
  return a > 20 ? a - std::log(2.0) : std::log(std::sinh(a));
}

// c alpha(t) with c = sinh(w).
double rate_times_alpha(double a, double b, double w, double t) {
  if (!(t > a && t < b) || w == 0.0) return 0.0;
  const double e = -1.0 / ((t - a) * (b - t));
  const double sign = w > 0 ? 1.0 : -1.0;
  return sign * std::exp(e + log_abs_rate(w) - std::log(b - a));
}

double gamma_w(double a, double b, double w) {
  if (w == 0.0) return 0.0;
  auto g = [a, b, w](double t) { return std::expm1(rate_times_alpha(a, b, w, t)); };
  const double peak = std::abs(g(0.5 * (a + b))) * (b - a);
  return numerics::integrate(g, a, b, kQuadTol * std::max(1.0, peak)).value;
}

// w with gamma(sinh w) = y.
double solve_w(double a, double b, double y) {
  if (!(y > -(b - a)))
    throw ValidationError("gamma^{-1} is defined only above -(b-a) = " + std::to_string(-(b - a)) +
                          ", got " + std::to_string(y));
  if (y == 0.0) return 0.0;
  auto g = [a, b, y](double w) { return gamma_w(a, b, w) - y; };
  // gamma grows like e^{c max(alpha)} upward but approaches -(b-a) only
  // like 2/ln|c| downward, so the bracket grows geometrically in w.
  double edge = y > 0 ? 1.0 : -1.0;
  const double limit = y > 0 ? 14.0 : 1e7;
  while ((g(edge) > 0) != (y > 0)) {
    edge *= 2;
    if (std::abs(edge) > limit)
      throw NumericalError("gamma^{-1} bracket failure for y = " + std::to_string(y));
  }
  const double lo = std::min(0.0, edge), hi = std::max(0.0, edge);
  return numerics::brent(g, lo, hi, 1e-15 * std::max(1.0, std::abs(edge)), 400).x;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

void require_increasing(const std::vector<double>& x, double lo, double hi, const char* what) {
  double prev = lo;
  for (double v : x) {
    if (!(v > prev)) throw ValidationError(std::string(what) + ": values must increase strictly inside (" +
                                           std::to_string(lo) + ", " + std::to_string(hi) + "), got " +
                                           join(x));
    prev = v;
  }
  if (!(prev < hi))
    throw ValidationError(std::string(what) + ": values must stay below " + std::to_string(hi) +
                          ", got " + join(x));
}

}  // namespace

double bump_alpha(double a, double b, double t) {
  if (!(t > a && t < b)) return 0.0;
  return std::exp(-1.0 / ((t - a) * (b - t))) / (b - a);
}

double bump_gamma(double a, double b, double c) {
  if (!(a < b)) throw ShapeError("bump needs a < b");
  return gamma_w(a, b, std::asinh(c));
}

double bump_gamma_inverse(double a, double b, double y) {
  if (!(a < b)) throw ShapeError("bump needs a < b");
  return std::sinh(solve_w(a, b, y));
}

double bump_q(double a, double b, double t, double s) {
  if (!(a < b)) throw ShapeError("bump needs a < b");
  if (!(s > 0)) throw ValidationError("bump_q needs s > 0, got " + std::to_string(s));
  if (!(t > a && t < b)) return 0.0;
  return std::expm1(rate_times_alpha(a, b, solve_w(a, b, s - (b - a)), t));
}

InterpolatingDiffeo::InterpolatingDiffeo(std::vector<double> x) {
  const int n = static_cast<int>(x.size());
  require_increasing(x, 0.0, n + 1.0, "interpolation data");
  x_.reserve(n + 2);
  x_.push_back(0.0);
  x_.insert(x_.end(), x.begin(), x.end());
  x_.push_back(n + 1.0);
  for (int k = 0; k <= n; ++k) w_.push_back(solve_w(k, k + 1.0, x_[k + 1] - x_[k] - 1.0));
}

double InterpolatingDiffeo::log_delta(double t) const {
  const double k = std::floor(t);
  if (k < 0 || k > n() || t == k) return 0.0;
  return rate_times_alpha(k, k + 1.0, w_[static_cast<std::size_t>(k)], t);
}

double InterpolatingDiffeo::delta(double t) const { return std::exp(log_delta(t)); }

double InterpolatingDiffeo::operator()(double t) const {
  if (t <= 0.0 || t >= n() + 1.0) return t;
  const double k = std::floor(t);
  const std::size_t ki = static_cast<std::size_t>(k);
  const double w = w_[ki];
  if (w == 0.0 && x_[ki] == k) return t;
  if (t == k || w == 0.0) return x_[ki] + (t - k);
  auto d = [k, w](double u) { return std::exp(rate_times_alpha(k, k + 1.0, w, u)); };
  return x_[ki] + numerics::integrate(d, k, t, kQuadTol).value;
}

Diffeo1D InterpolatingDiffeo::as_diffeo() const {
  const InterpolatingDiffeo self = *this;
  return Diffeo1D::from_functions([self](double t) { return self(t); },
                                  [self](double t) { return self.delta(t); }, 0.0, n() + 1.0,
                                  "phi_n(" + join(values()) + ")");
}

InterpolatingDiffeo build_phi_n(const std::vector<double>& x) { return InterpolatingDiffeo(x); }

Diffeo1D section_line(int n, const std::vector<double>& x) {
  if (n < 2) throw ShapeError("section_line needs n >= 2");
  if (static_cast<int>(x.size()) != n - 2)
    throw ShapeError("section_line needs n-2 = " + std::to_string(n - 2) + " values, got " +
                     std::to_string(x.size()));
  require_increasing(x, 1.0, n, "section_line");
  std::vector<double> data{1.0};
  data.insert(data.end(), x.begin(), x.end());
  data.push_back(n);
  return InterpolatingDiffeo(data).as_diffeo();
}

Diffeo1D section_circle(int n, const std::vector<double>& x, double shift) {
  if (n < 1) throw ShapeError("section_circle needs n >= 1");
  if (static_cast<int>(x.size()) != n - 1)
    throw ShapeError("section_circle needs n-1 = " + std::to_string(n - 1) + " values, got " +
                     std::to_string(x.size()));
  require_increasing(x, 0.0, n, "section_circle");
  const InterpolatingDiffeo phi(x);
  const double period = n;
  auto lift = [phi, period, shift](double tau) {
    const double turns = std::floor(tau / period);
    return phi(tau - turns * period) + turns * period + shift;
  };
  auto deriv = [phi, period](double tau) {
    return phi.delta(tau - std::floor(tau / period) * period);
  };
  std::ostringstream label;
  label.precision(10);
  label << "section_circle(" << join(x) << "; " << shift << ")";
  return Diffeo1D::circle_lift(lift, deriv, period, label.str());
}

Diffeo1D contract_to_identity(const Diffeo1D& phi, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("contraction time must lie in [0, 1]");
  if (!(phi.min_derivative(1001) > 0.0))
    throw ValidationError("phi is not orientation-preserving on its domain grid");
  auto value = [phi, t](double x) { return (1 - t) * x + t * phi(x); };
  auto deriv = [phi, t](double x) { return (1 - t) + t * phi.derivative(x); };
  std::ostringstream label;
  label << "contract(" << phi.label() << ", " << t << ")";
  if (phi.domain() == Diffeo1D::Domain::circle)
    return Diffeo1D::circle_lift(value, deriv, phi.period(), label.str());
  return Diffeo1D::from_functions(value, deriv, phi.lo(), phi.hi(), label.str());
}

}  // namespace jacobiflow
