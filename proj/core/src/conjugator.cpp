#include "jacobiflow/conjugator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacobiflow/error.hpp"

namespace jacobiflow {

namespace {

int per_axis(const LiftProblem& p) {
  const int m = p.box.dimension();
  const int cap = static_cast<int>(std::floor(std::pow(1e5, 1.0 / m)));
  return std::max(2, std::min(p.grid, cap));
}

Box default_flow_box(const LiftProblem& p) {
  if (p.flow_box) return *p.flow_box;
  Box b = p.box;
  for (int i = 0; i < b.dimension(); ++i) {
    const double c = 0.5 * (b.lo[i] + b.hi[i]);
    const double r = 2.0 * (b.hi[i] - b.lo[i]);
    b.lo[i] = c - r;
    b.hi[i] = c + r;
  }
  return b;
}

void check_shapes(const LiftProblem& p) {
  const int m = p.f.arity();
  if (p.field.size() != m || p.field.arity() != m) throw ShapeError("field does not match f");
  if (p.box.dimension() != m) throw ShapeError("box dimension does not match f");
  if (p.alpha.arity() != 1) throw ShapeError("alpha must have one variable");
}

std::pair<double, double> value_range(const SmoothExpr& f, const std::vector<std::vector<double>>& pts) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& x : pts) {
    const double v = f(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

ShiftOptions shift_options(const LiftProblem& p) {
  ShiftOptions o;
  o.flow = p.flow;
  return o;
}

struct LiftMap {
  ShiftFunction shift;
  FlowSpec spec;
  SmoothExpr f;

  std::vector<double> operator()(std::span<const double> x) const {
    return integrate_flow(spec, x, shift.sigma(f(x)));
  }
};

LiftMap make_lift(const LiftProblem& p, const Diffeo1D& phi, double a, double b) {
  return LiftMap{shift_function(phi, p.alpha, a, b, shift_options(p)),
                 FlowSpec{p.field, default_flow_box(p), p.flow}, p.f};
}

}  // namespace

void validate(const LiftProblem& p) {
  check_shapes(p);
  const SmoothExpr af = substitute(p.alpha, std::vector<SmoothExpr>{p.f});
  const SmoothExpr defect = directional_derivative(p.f, p.field) - af;
  const double worst = max_abs_on_grid(defect, p.box, per_axis(p));
  if (!(worst <= p.validation_tol))
    throw ValidationError("dd(f, F) differs from alpha(f) by " + std::to_string(worst) +
                          " on the grid");
}

double semiconjugacy_residual(const LiftProblem& p, double t) {
  const auto pts = grid_points(p.box, per_axis(p));
  const auto [lo, hi] = value_range(p.f, pts);
  const double reach = 1e3 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  const FlowSpec target = FlowSpec::one_dim(p.alpha, lo - reach, hi + reach, p.flow);
  const FlowSpec source{p.field, default_flow_box(p), p.flow};
  double worst = 0.0;
  for (const auto& x : pts) {
    const double lhs = integrate_flow_1d(target, p.f(x), t);
    const double rhs = p.f(integrate_flow(source, x, t));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

LiftReport lift_diffeo(const LiftProblem& p) {
  validate(p);
  const auto pts = grid_points(p.box, per_axis(p));
  const auto [lo, hi] = value_range(p.f, pts);
  const LiftMap h = make_lift(p, p.phi, lo, hi);

  LiftReport rep;
  rep.embedding_margin = std::numeric_limits<double>::infinity();
  rep.points = pts;
  rep.images.reserve(pts.size());
  for (const auto& x : pts) {
    const double s = p.f(x);
    auto y = h(x);
    rep.residual = std::max(rep.residual, std::abs(p.phi(s) - p.f(y)));
    rep.images.push_back(std::move(y));
    // dLambda(F) + 1 with Lambda = sigma o f reduces to
    // phi'(s) alpha(s) / alpha(phi(s)); at rest points of alpha it is 1.
    const double as = p.alpha({s});
    const double aps = p.alpha({p.phi(s)});
    const double margin = (as == 0.0 || aps == 0.0) ? 1.0 : p.phi.derivative(s) * as / aps;
    rep.embedding_margin = std::min(rep.embedding_margin, margin);
  }
  rep.embedding_holds = rep.embedding_margin > 0.0;
  return rep;
}

double lift_homomorphism_residual(const LiftProblem& p, const Diffeo1D& phi1,
                                  const Diffeo1D& phi2) {
  validate(p);
  const auto pts = grid_points(p.box, per_axis(p));
  const auto [lo, hi] = value_range(p.f, pts);
  const double lo2 = std::min(lo, phi1(lo));
  const double hi2 = std::max(hi, phi1(hi));
  const LiftMap h1 = make_lift(p, phi1, lo, hi);
  const LiftMap h2 = make_lift(p, phi2, lo2, hi2);
  const LiftMap h21 = make_lift(p, compose(phi2, phi1), lo, hi);
  double worst = 0.0;
  for (const auto& x : pts) {
    const auto direct = h21(x);
    const auto chained = h2(h1(x));
    for (std::size_t i = 0; i < direct.size(); ++i)
      worst = std::max(worst, std::abs(direct[i] - chained[i]));
  }
  return worst;
}

}  // namespace jacobiflow
