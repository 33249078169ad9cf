#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jacobiflow/diffeo.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

/// Points of F_n(S^1) on the circle R / nZ (circumference n, not 1).
/// Scalar is double or mpq_class; with mpq_class all mod-n arithmetic is exact.
template <class Scalar>
struct ConfigPoint {
  int n = 0;
  std::vector<Scalar> coords;  // each in [0, n)
};

/// (x_1 - x_n, .., x_{n-1} - x_n) mod n together with [x_n].
template <class Scalar>
struct SplitPoint {
  int n = 0;
  std::vector<Scalar> deltas;
  Scalar base{};
};

namespace detail {

inline double floor_div(double x, int n) { return std::floor(x / n); }
inline mpq_class floor_div(const mpq_class& x, int n) {
  mpq_class q = x / n;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(f);
}

}  // namespace detail

/// x mod n in [0, n).
template <class Scalar>
Scalar mod_n(const Scalar& x, int n) {
  Scalar r = x - detail::floor_div(x, n) * n;
  if (r >= n) r -= n;  // floating rounding of x slightly below a multiple of n
  if (r < 0) r += n;
  return r;
}

template <class Scalar>
ConfigPoint<Scalar> make_config(int n, std::vector<Scalar> coords) {
  if (n < 1) throw ShapeError("configuration needs n >= 1");
  if (static_cast<int>(coords.size()) != n)
    throw ShapeError("configuration needs " + std::to_string(n) + " coordinates");
  for (auto& c : coords) c = mod_n(c, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coords[i] == coords[j]) throw ValidationError("configuration points must be pairwise distinct");
  return {n, std::move(coords)};
}

/// Walking the circle from x_1 in the positive direction meets x_2, .., x_n
/// in this order.
template <class Scalar>
bool component_check(const ConfigPoint<Scalar>& p) {
  Scalar prev = 0;
  for (int i = 1; i < p.n; ++i) {
    const Scalar d = mod_n(Scalar(p.coords[i] - p.coords[0]), p.n);
    if (!(d > prev)) return false;
    prev = d;
  }
  return true;
}

template <class Scalar>
SplitPoint<Scalar> split(const ConfigPoint<Scalar>& p) {
  if (!component_check(p))
    throw ValidationError("point is not in the component of (1, .., n)");
  SplitPoint<Scalar> s;
  s.n = p.n;
  const Scalar& last = p.coords[p.n - 1];
  for (int i = 0; i + 1 < p.n; ++i) s.deltas.push_back(mod_n(Scalar(p.coords[i] - last), p.n));
  s.base = mod_n(last, p.n);
  return s;
}

template <class Scalar>
ConfigPoint<Scalar> unsplit(const SplitPoint<Scalar>& s) {
  if (static_cast<int>(s.deltas.size()) != s.n - 1) throw ShapeError("split point needs n-1 deltas");
  Scalar prev = 0;
  for (const auto& d : s.deltas) {
    if (!(d > prev)) throw ValidationError("split deltas must increase strictly inside (0, n)");
    prev = d;
  }
  if (!(prev < s.n)) throw ValidationError("split deltas must stay below n");
  ConfigPoint<Scalar> p;
  p.n = s.n;
  for (const auto& d : s.deltas) p.coords.push_back(mod_n(Scalar(d + s.base), s.n));
  p.coords.push_back(mod_n(s.base, s.n));
  return p;
}

/// tau^d with tau(x_1, .., x_n) = (x_2, .., x_n, x_1); d may be negative.
template <class Scalar>
ConfigPoint<Scalar> cyclic_shift(const ConfigPoint<Scalar>& p, int d) {
  ConfigPoint<Scalar> q;
  q.n = p.n;
  const int r = ((d % p.n) + p.n) % p.n;
  for (int i = 0; i < p.n; ++i) q.coords.push_back(p.coords[(i + r) % p.n]);
  return q;
}

/// Representative of the Z_n orbit: the lexicographically smallest rotation.
template <class Scalar>
ConfigPoint<Scalar> canonical_rotation(const ConfigPoint<Scalar>& p) {
  ConfigPoint<Scalar> best = p;
  for (int d = 1; d < p.n; ++d) {
    auto q = cyclic_shift(p, d);
    if (std::lexicographical_compare(q.coords.begin(), q.coords.end(), best.coords.begin(),
                                     best.coords.end()))
      best = std::move(q);
  }
  return best;
}

enum class Parity { preserves, reverses };

std::string to_string(Parity p);

/// Sign of tau^d as a permutation of n letters: it reverses orientation
/// iff n is even and d is odd.
Parity shift_parity(int n, int d);

/// (phi(1), .., phi(n)) reduced mod n.
ConfigPoint<double> evaluation_map(const Diffeo1D& phi, int n);

/// Sorted boundary values (interval case) and critical values of a
/// one-variable f; values closer than 1e-9 are merged. On the circle
/// [a, b) is one period and there are no boundary values.
std::vector<double> exceptional_values(const SmoothExpr& f, double a, double b,
                                       bool circle = false);

}  // namespace jacobiflow
