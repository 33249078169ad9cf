#include "jacobiflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

namespace {

void rk4_step(const OdeRhs& rhs, std::span<const double> x, double h, std::span<double> out,
              std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
  const std::size_t n = x.size();
  rhs(x, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  rhs(tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  rhs(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  rhs(tmp, k4);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

std::string point_str(std::span<const double> x) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

}  // namespace

std::vector<double> integrate_ode(const OdeRhs& rhs, std::span<const double> x0, double t,
                                  const Box* box, const FlowOptions& options) {
  std::vector<double> x(x0.begin(), x0.end());
  if (t == 0.0) return x;
  const std::size_t n = x.size();
  if (box && !box->contains(x)) throw FlowError("initial point " + point_str(x) + " is outside the domain box");

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), full(n), half(n), twice(n);
  const double dir = t > 0 ? 1.0 : -1.0;
  double done = 0.0;
  double h = std::min(options.initial_step, std::abs(t));
  long steps = 0;
  while (done < std::abs(t)) {
    if (++steps > options.max_steps) throw FlowError("step limit reached");
    const bool last = done + h >= std::abs(t);
    const double step = last ? std::abs(t) - done : h;
    try {
      rk4_step(rhs, x, dir * step, full, k1, k2, k3, k4, tmp);
      rk4_step(rhs, x, dir * step / 2, half, k1, k2, k3, k4, tmp);
      rk4_step(rhs, half, dir * step / 2, twice, k1, k2, k3, k4, tmp);
    } catch (const DomainError& e) {
      throw FlowError(std::string("field evaluation failed along the trajectory: ") + e.what());
    }
    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = options.rel_tol * std::abs(twice[i]) + options.abs_tol;
      if (!std::isfinite(twice[i]) || !std::isfinite(full[i])) finite = false;
      err = std::max(err, std::abs(twice[i] - full[i]) / 15.0 / scale);
    }
    if (finite && err <= 1.0) {
      for (std::size_t i = 0; i < n; ++i) x[i] = twice[i] + (twice[i] - full[i]) / 15.0;
      done = last ? std::abs(t) : done + step;
      if (box && !box->contains(x))
        throw FlowError("trajectory left the domain box at t=" + std::to_string(dir * done) +
                        " near " + point_str(x));
      const double grow = err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 4.0);
      if (!last) h = step * grow;
    } else {
      h = step * (finite ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.25);
      if (h < options.min_step * std::max(1.0, std::abs(t)))
        throw FlowError("step size underflow at t=" + std::to_string(dir * done) + " near " +
                        point_str(x));
    }
  }
  return x;
}

FlowSpec FlowSpec::one_dim(const SmoothExpr& alpha, double lo, double hi,
                           const FlowOptions& options) {
  if (alpha.arity() != 1) throw ShapeError("one-dimensional flow needs a one-variable field");
  return FlowSpec{VectorFieldExpr({alpha}), Box{{lo}, {hi}}, options};
}

std::vector<double> integrate_flow(const FlowSpec& spec, std::span<const double> x0, double t) {
  if (static_cast<int>(x0.size()) != spec.field.arity())
    throw ShapeError("initial point dimension does not match the field");
  OdeRhs rhs = [&spec](std::span<const double> x, std::span<double> dx) { spec.field(x, dx); };
  return integrate_ode(rhs, x0, t, &spec.box, spec.options);
}

double integrate_flow_1d(const FlowSpec& spec, double s0, double t) {
  const double x0[1] = {s0};
  return integrate_flow(spec, x0, t)[0];
}

namespace {

constexpr int kLimitSamples = 6;
constexpr double kLimitTol = 1e-6;

double settle(const std::vector<double>& h, const std::vector<double>& v, const char* what) {
  const auto ex = numerics::extrapolate_to_zero(h, v);
  if (!(ex.error <= kLimitTol * std::max(1.0, std::abs(ex.value))))
    throw NumericalError(std::string(what) + ": extrapolation did not converge (spread " +
                         std::to_string(ex.error) + ")");
  return ex.value;
}

}  // namespace

double flow_factor_c(const SmoothExpr& alpha, double s, double t, double h0,
                     const FlowOptions& options) {
  if (alpha.arity() != 1) throw ShapeError("alpha must have one variable");
  const double as = alpha({s});
  if (t == 0.0) {
    std::vector<double> hs, vs;
    for (int j = 0; j < kLimitSamples; ++j) {
      const double tj = h0 * std::ldexp(1.0, -j);
      hs.push_back(tj);
      vs.push_back(flow_factor_c(alpha, s, tj, h0, options));
    }
    return settle(hs, vs, "t -> 0 limit of c");
  }
  if (as == 0.0) {
    std::vector<double> hs, vs;
    for (int j = 0; j < kLimitSamples; ++j) {
      const double hj = h0 * std::ldexp(1.0, -j);
      hs.push_back(hj);
      vs.push_back(flow_factor_c(alpha, s + hj, t, h0, options));
    }
    return settle(hs, vs, "s -> zero of alpha limit of c");
  }
  const double reach = 1e3 * std::max(1.0, std::abs(s));
  const FlowSpec spec = FlowSpec::one_dim(alpha, s - reach, s + reach, options);
  return (integrate_flow_1d(spec, s, t) - s) / (t * as);
}

AlphaCase classify_alpha(const SmoothExpr& alpha) {
  if (alpha.arity() != 1) throw ShapeError("alpha must have one variable");
  if (alpha({0.0}) != 0.0) throw ValidationError("alpha(0) must be 0");
  const double d0 = derive(alpha, 0)({0.0});
  if (std::abs(d0 - 1.0) > 1e-12 && std::abs(d0) > 1e-12)
    throw ValidationError("alpha'(0) must be 0 or 1, got " + std::to_string(d0));
  for (int j = 1; j <= 30; ++j) {
    const double s = std::ldexp(1.0, -j);
    if (alpha({s}) == 0.0 || alpha({-s}) == 0.0)
      throw ValidationError("alpha vanishes at +-2^-" + std::to_string(j));
  }
  return std::abs(d0) > 0.5 ? AlphaCase::a : AlphaCase::b;
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes:
      return "yes";
    case Tristate::no:
      return "no";
    case Tristate::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

namespace {

// Ratios r_j = (phi(s_j) - s_j) / (alpha(s_j) mu(s_j)) at s_j = side*2^{-j},
// keeping only samples whose rounding error is small against the value.
std::vector<double> resolvable_ratios(const Diffeo1D& phi, const SmoothExpr& alpha,
                                      const std::optional<SmoothExpr>& mu, int side) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> out;
  for (int j = 1; j <= 30; ++j) {
    const double s = side * std::ldexp(1.0, -j);
    double den = alpha({s});
    if (mu) den *= (*mu)({s});
    if (den == 0.0) continue;
    const double ps = phi(s);
    const double r = (ps - s) / den;
    const double noise = 8 * eps * std::max(std::abs(s), std::abs(ps)) / std::abs(den);
    if (noise <= 1e-3 * std::max(1.0, std::abs(r))) out.push_back(r);
  }
  return out;
}

Tristate classify_side(const std::vector<double>& r, double& limit) {
  if (r.size() < 4) return Tristate::indeterminate;
  const std::size_t n = r.size();
  if (std::all_of(r.end() - 4, r.end(), [](double v) { return v == 0.0; })) {
    limit = 0.0;
    return Tristate::yes;
  }
  // Unbounded growth: |r| keeps increasing by a fixed factor per halving.
  bool growing = true;
  for (std::size_t i = n - 4; i + 1 < n; ++i)
    if (!(std::abs(r[i + 1]) >= 1.3 * std::abs(r[i]))) growing = false;
  if (growing) return Tristate::no;
  // Convergence: successive differences contract.
  bool contracting = true;
  double last_diff = std::abs(r[n - 1] - r[n - 2]);
  for (std::size_t i = n - 4; i + 2 < n; ++i) {
    const double d1 = std::abs(r[i + 1] - r[i]);
    const double d2 = std::abs(r[i + 2] - r[i + 1]);
    if (!(d2 <= 0.9 * d1 || d2 <= 1e-12 * std::max(1.0, std::abs(r[i + 2])))) contracting = false;
  }
  if (contracting || last_diff <= 1e-9 * std::max(1.0, std::abs(r[n - 1]))) {
    limit = r[n - 1];
    return Tristate::yes;
  }
  return Tristate::indeterminate;
}

}  // namespace

Tristate v_membership(const Diffeo1D& phi, const SmoothExpr& alpha,
                      const std::optional<SmoothExpr>& mu) {
  if (std::abs(phi(0.0)) > 1e-14) throw ValidationError("phi(0) must be 0");
  double lp = 0.0, ln = 0.0;
  const Tristate pos = classify_side(resolvable_ratios(phi, alpha, mu, +1), lp);
  const Tristate neg = classify_side(resolvable_ratios(phi, alpha, mu, -1), ln);
  if (pos == Tristate::no || neg == Tristate::no) return Tristate::no;
  if (pos == Tristate::yes && neg == Tristate::yes) {
    if (std::abs(lp - ln) <= 1e-6 * std::max({1.0, std::abs(lp), std::abs(ln)}))
      return Tristate::yes;
    return Tristate::no;  // one-sided limits differ: the quotient is not continuous
  }
  return Tristate::indeterminate;
}

EmbeddingReport embedding_criterion(const SmoothExpr& lambda, const VectorFieldExpr& field,
                                    const Box& box, int per_axis) {
  const SmoothExpr d = directional_derivative(lambda, field);
  EmbeddingReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  for (const auto& p : grid_points(box, per_axis)) rep.margin = std::min(rep.margin, d(p) + 1.0);
  rep.holds = rep.margin > 0.0;
  return rep;
}

}  // namespace jacobiflow
