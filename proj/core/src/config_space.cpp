#include "jacobiflow/config_space.hpp"

#include "jacobiflow/critical_points.hpp"

namespace jacobiflow {

std::string to_string(Parity p) { return p == Parity::preserves ? "preserves" : "reverses"; }

Parity shift_parity(int n, int d) {
  if (n < 1) throw ShapeError("shift_parity needs n >= 1");
  // tau is an n-cycle of sign (-1)^{n-1}.
  const bool odd_power = (d % 2) != 0;
  return (n % 2 == 0 && odd_power) ? Parity::reverses : Parity::preserves;
}

ConfigPoint<double> evaluation_map(const Diffeo1D& phi, int n) {
  if (n < 1) throw ShapeError("evaluation_map needs n >= 1");
  ConfigPoint<double> p;
  p.n = n;
  for (int k = 1; k <= n; ++k) p.coords.push_back(mod_n(phi(k), n));
  return p;
}

std::vector<double> exceptional_values(const SmoothExpr& f, double a, double b, bool circle) {
  if (f.arity() != 1) throw ShapeError("exceptional_values needs a one-variable function");
  if (!(a < b)) throw ShapeError("empty interval");
  std::vector<double> vals;
  if (!circle) {
    vals.push_back(f({a}));
    vals.push_back(f({b}));
  }
  for (double c : zeros_1d(derive(f, 0), a, b)) {
    if (circle && c >= b) continue;
    vals.push_back(f({c}));
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (double v : vals)
    if (out.empty() || v - out.back() > 1e-9 * std::max(1.0, std::abs(v))) out.push_back(v);
  return out;
}

}  // namespace jacobiflow
