#include "jacobiflow/critical_points.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

namespace {

void collect(const ExprPtr& n, int arity, std::vector<SmoothExpr>& out) {
  switch (n->op) {
    case ExprOp::constant:
      if (n->value == 0) out.emplace_back(arity, n);
      return;
    case ExprOp::mul:
      collect(n->lhs, arity, out);
      collect(n->rhs, arity, out);
      return;
    case ExprOp::div:
    case ExprOp::neg:
      collect(n->lhs, arity, out);
      return;
    case ExprOp::pow:
      if (n->index > 0) collect(n->lhs, arity, out);
      return;
    case ExprOp::flatexp:
      collect(n->lhs, arity, out);
      return;
    case ExprOp::flatmul:
      collect(n->lhs, arity, out);
      collect(n->rhs, arity, out);
      return;
    case ExprOp::exp:
      return;
    default:
      out.emplace_back(arity, n);
      return;
  }
}

std::optional<double> try_eval(const SmoothExpr& e, double x) {
  try {
    return e({x});
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

void dedup(std::vector<double>& xs, double scale) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs)
    if (out.empty() || std::abs(x - out.back()) > 1e-12 * std::max(scale, std::abs(x)))
      out.push_back(x);
  xs.swap(out);
}

}  // namespace

std::vector<SmoothExpr> vanishing_factors(const SmoothExpr& e) {
  std::vector<SmoothExpr> out;
  collect(e.root(), e.arity(), out);
  return out;
}

std::vector<double> zeros_1d(const SmoothExpr& e, double a, double b, int samples) {
  if (e.arity() != 1) throw ShapeError("zero search needs a one-variable expression");
  if (!(a < b)) throw ShapeError("zero search needs a < b");
  std::vector<double> roots;
  const auto xs = numerics::linspace(a, b, std::max(samples, 3));
  const double scale = std::max(std::abs(a), std::abs(b));

  for (const SmoothExpr& u : vanishing_factors(e)) {
    if (u.is_zero()) continue;  // identically zero: no isolated zeros to report
    auto fn = [&](double x) { return u({x}); };
    std::vector<std::optional<double>> vals(xs.size());
    double magnitude = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      vals[k] = try_eval(u, xs[k]);
      if (vals[k]) magnitude = std::max(magnitude, std::abs(*vals[k]));
    }
    const SmoothExpr du = derive(u, 0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (!vals[k]) continue;
      if (*vals[k] == 0.0) {
        roots.push_back(xs[k]);
        continue;
      }
      if (k + 1 < xs.size() && vals[k + 1] && *vals[k + 1] != 0.0 &&
          (*vals[k] < 0) != (*vals[k + 1] < 0)) {
        try {
          const double r = numerics::bisect_sign_change(fn, xs[k], xs[k + 1]);
          // A pole also flips sign; keep only genuine zeros.
          const auto at = try_eval(u, r);
          if (at && std::abs(*at) <= 1e-6 * std::max(1.0, magnitude)) roots.push_back(r);
        } catch (const DomainError&) {
        }
        continue;
      }
      // Touching zero: |u| has a local minimum between neighbours without a
      // sign change; probe the derivative for the extremum.
      if (k > 0 && k + 1 < xs.size() && vals[k - 1] && vals[k + 1] &&
          std::abs(*vals[k]) <= std::abs(*vals[k - 1]) &&
          std::abs(*vals[k]) <= std::abs(*vals[k + 1]) &&
          (*vals[k - 1] < 0) == (*vals[k] < 0) && (*vals[k + 1] < 0) == (*vals[k] < 0)) {
        auto dfn = [&](double x) { return du({x}); };
        const auto dl = try_eval(du, xs[k - 1]);
        const auto dr = try_eval(du, xs[k + 1]);
        if (!dl || !dr || (*dl < 0) == (*dr < 0)) continue;
        try {
          const double r = numerics::bisect_sign_change(dfn, xs[k - 1], xs[k + 1]);
          const auto at = try_eval(u, r);
          if (at && std::abs(*at) <= 1e-12 * std::max(1.0, magnitude)) roots.push_back(r);
        } catch (const DomainError&) {
        }
      }
    }
  }
  dedup(roots, scale);
  return roots;
}

}  // namespace jacobiflow
