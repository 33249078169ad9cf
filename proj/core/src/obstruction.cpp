#include <algorithm>
#include <cmath>
#include <numbers>

#include "jacobiflow/critical_points.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/jacobi.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

namespace {

constexpr int kShells = 40;
constexpr int kShellSamples = 64;

std::vector<ObstructionPoint> scan_side(const std::function<double(double)>& f,
                                        const SmoothExpr& fprime, double limit, int side,
                                        double tol) {
  std::vector<ObstructionPoint> found;
  for (int j = 0; j <= kShells; ++j) {
    const double lo = std::ldexp(1.0, -j - 1);
    const double hi = std::min(std::ldexp(1.0, -j), limit);
    if (!(lo < hi)) continue;
    std::vector<double> roots =
        side > 0 ? zeros_1d(fprime, lo, hi, kShellSamples) : zeros_1d(fprime, -hi, -lo, kShellSamples);
    // Prefer the outermost root of the shell.
    if (side > 0) std::reverse(roots.begin(), roots.end());
    for (double p : roots) {
      if (!found.empty() && std::abs(p) >= std::abs(found.back().p)) continue;
      const double v = f(p);
      if (std::abs(v) > tol) {
        found.push_back({p, v});
        break;
      }
    }
  }
  return found;
}

std::vector<ObstructionPoint> geometric_subsequence(const std::vector<ObstructionPoint>& pts) {
  std::vector<ObstructionPoint> out;
  for (const auto& q : pts)
    if (out.empty() || std::abs(q.p) <= std::abs(out.back().p) / 2) out.push_back(q);
  return out;
}

}  // namespace

ObstructionReport accumulation_obstruction(const std::function<double(double)>& f,
                                           const SmoothExpr& fprime, double a, double b,
                                           double tol) {
  if (fprime.arity() != 1) throw ShapeError("obstruction search is one-dimensional");
  if (!(a <= 0.0 && 0.0 <= b)) throw ShapeError("interval must contain 0");
  if (std::abs(f(0.0)) > std::max(tol, 1e-12)) throw ValidationError("f(0) must be 0");
  ObstructionReport report;
  if (b > 0) report.positive_side = scan_side(f, fprime, b, +1, tol);
  if (a < 0) report.negative_side = scan_side(f, fprime, -a, -1, tol);
  auto pos = geometric_subsequence(report.positive_side);
  auto neg = geometric_subsequence(report.negative_side);
  report.certificate = pos.size() >= neg.size() ? pos : neg;
  report.obstructed = report.certificate.size() >= 3;
  return report;
}

ObstructionReport accumulation_obstruction(const SmoothExpr& f, double a, double b, double tol) {
  if (f.arity() != 1) throw ShapeError("obstruction search is one-dimensional");
  return accumulation_obstruction([f](double x) { return f({x}); }, derive(f, 0), a, b, tol);
}

FlatOscillation flat_oscillation_example() {
  using std::numbers::pi;
  // With u = 1/t the integrand becomes h(u)/u^2 for the pi-periodic
  // h(u) = exp(-1/sin(u)^2), so f(x) = int_{1/x}^inf h(u)/u^2 du.
  auto h = [](double u) {
    const double s = std::sin(u);
    return s == 0.0 ? 0.0 : std::exp(-1.0 / (s * s));
  };
  const double mean = numerics::integrate(h, 0.0, pi, 1e-15).value / pi;
  auto f = [h, mean](double x) {
    if (x == 0.0) return 0.0;
    const double sign = x < 0 ? -1.0 : 1.0;
    const double u0 = 1.0 / std::abs(x);
    // Integrate period by period in the reduced variable v = u - k*pi so
    // that sin never sees a large argument.
    double k = std::floor(u0 / pi);
    const double r = std::clamp(u0 - k * pi, 0.0, pi);
    auto period = [&](double base, double from) {
      auto g = [&](double v) {
        const double u = base + v;
        return h(v) / (u * u);
      };
      return numerics::integrate(g, from, pi, 1e-13 * pi / (base * base + 1.0)).value;
    };
    double total = period(k * pi, r);
    constexpr int kPeriods = 256;
    for (int i = 0; i < kPeriods; ++i) {
      k += 1.0;
      total += period(k * pi, 0.0);
    }
    total += mean / ((k + 1.0) * pi);
    return sign * total;
  };
  SmoothExpr x = SmoothExpr::variable(1, 0);
  SmoothExpr one = SmoothExpr::constant(1, 1);
  SmoothExpr fprime = flatexp(pow(sin(one / x), 2));
  return {f, fprime};
}

}  // namespace jacobiflow
