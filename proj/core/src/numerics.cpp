#include "jacobiflow/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "jacobiflow/error.hpp"

namespace jacobiflow::numerics {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

RootResult brent(const ScalarFn& f, double a, double b, double xtol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};
  if ((fa > 0) == (fb > 0)) {
    throw NumericalError("brent: root not bracketed");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return {b, iter};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw NumericalError("brent: iteration limit reached");
}

double bisect_sign_change(const ScalarFn& f, double a, double b) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw NumericalError("bisection: no sign change");
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= std::min(a, b) || m >= std::max(a, b)) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::pair<double, double> expand_bracket(const ScalarFn& f, double lo, double hi,
                                         int max_doublings) {
  double flo = f(lo);
  double fhi = f(hi);
  double width = hi - lo;
  for (int i = 0; i < max_doublings; ++i) {
    if ((flo > 0) != (fhi > 0) || flo == 0.0 || fhi == 0.0) return {lo, hi};
    width *= 2.0;
    if (std::abs(flo) < std::abs(fhi)) {
      lo -= width;
      flo = f(lo);
    } else {
      hi += width;
      fhi = f(hi);
    }
  }
  throw NumericalError("bracket expansion failed");
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value;
  double error;
};

Panel gk15(const ScalarFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

void adapt(const ScalarFn& f, double a, double b, double tol, int depth,
           QuadratureResult& acc) {
  const Panel p = gk15(f, a, b);
  acc.evaluations += 15;
  // Below the rounding level of the panel itself no split can help.
  const bool at_noise = p.error <= 64 * kEps * std::abs(p.value);
  if (p.error <= tol || at_noise || depth <= 0 || std::abs(b - a) <= 64 * kEps * std::abs(a)) {
    acc.value += p.value;
    acc.error += p.error;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth - 1, acc);
  adapt(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadratureResult integrate(const ScalarFn& f, double a, double b, double abs_tol,
                           int max_depth) {
  QuadratureResult acc{0.0, 0.0, 0};
  if (a == b) return acc;
  // Start from a few panels so narrow features are not skipped entirely.
  constexpr int kInitial = 4;
  const double h = (b - a) / kInitial;
  for (int i = 0; i < kInitial; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == kInitial) ? b : a + (i + 1) * h;
    adapt(f, lo, hi, abs_tol / kInitial, max_depth, acc);
  }
  if (!std::isfinite(acc.value)) throw NumericalError("quadrature produced a non-finite value");
  return acc;
}

namespace {

double neville_at_zero(std::span<const double> h, std::span<const double> v) {
  std::vector<double> p(v.begin(), v.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
  return p[0];
}

}  // namespace

Extrapolation extrapolate_to_zero(std::span<const double> h, std::span<const double> v) {
  const std::size_t n = h.size();
  if (n == 0 || v.size() != n) throw NumericalError("extrapolation: bad sample sizes");
  const double full = neville_at_zero(h, v);
  if (n == 1) return {full, std::abs(full)};
  // Error proxy: drop the coarsest sample and compare.
  const double reduced = neville_at_zero(h.subspan(1), v.subspan(1));
  return {full, std::abs(full - reduced)};
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {a};
  out.reserve(count);
  const double step = (b - a) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(i + 1 == count ? b : a + i * step);
  return out;
}

}  // namespace jacobiflow::numerics
