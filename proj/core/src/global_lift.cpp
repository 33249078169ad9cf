#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "jacobiflow/conjugator.hpp"
#include "jacobiflow/critical_points.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/numerics.hpp"

namespace jacobiflow {

namespace {

constexpr double kInvertTol = 1e-12;
constexpr double kLinearZone = 1e-6;
constexpr double kHadamardZone = 1e-8;
constexpr int kWindowSamples = 101;

int nearest_level(double v) { return static_cast<int>(std::lround(v)); }

double invert_monotone(const SmoothExpr& f, double a, double b, double target) {
  auto g = [&](double x) { return f({x}) - target; };
  const double ga = g(a), gb = g(b);
  if ((ga > 0) == (gb > 0) && ga != 0.0 && gb != 0.0)
    return std::abs(ga) < std::abs(gb) ? a : b;  // target a rounding step outside the piece
  return numerics::brent(g, a, b, kInvertTol, 400).x;
}

struct Window {
  double p;
  int level;
  int order;
  double a, b;            // component of |f - level| < w containing p
  double box_lo, box_hi;  // neighbouring breakpoints; the local flow stays inside
  double eps;
};

struct Glue {
  SmoothExpr f, df;
  Diffeo1D phi;
  std::vector<double> breaks;  // domain ends and interior critical points, sorted
  std::vector<Window> windows;
  LevelPrefactor prefactor;
  FlowOptions flow;

  std::size_t piece_of(double x) const {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    std::size_t k = it == breaks.begin() ? 0 : static_cast<std::size_t>(it - breaks.begin()) - 1;
    return std::min(k, breaks.size() - 2);
  }

  double lambda_map(double x) const {
    const std::size_t k = piece_of(x);
    return invert_monotone(f, breaks[k], breaks[k + 1], phi(f({x})));
  }

  double beta_hat(double s, int level) const {
    if (std::abs(s - level) < kHadamardZone) return phi.derivative(level);
    return (phi(s) - level) / (s - level);
  }

  double e_map(const Window& w, double x) const {
    if (x == w.p) return x;
    const double s = f({x});
    const double lb = std::log(beta_hat(s, w.level));
    const double t = prefactor == LevelPrefactor::inverse_eps ? lb / w.eps : w.eps * lb;
    const SmoothExpr& fe = f;
    const SmoothExpr& dfe = df;
    OdeRhs rhs = [&fe, &dfe, &w](std::span<const double> y, std::span<double> dy) {
      const double z = y[0];
      if (std::abs(z - w.p) < kLinearZone) {
        dy[0] = w.eps * (z - w.p) / w.order;
      } else {
        dy[0] = w.eps * (fe({z}) - w.level) / dfe({z});
      }
    };
    const Box box{{w.box_lo}, {w.box_hi}};
    const double x0[1] = {x};
    return integrate_ode(rhs, x0, t, &box, flow)[0];
  }

  const Window* window_of(double x) const {
    for (const auto& w : windows)
      if (x > w.a && x < w.b) return &w;
    return nullptr;
  }

  double h(double x) const {
    if (const Window* w = window_of(x)) return e_map(*w, x);
    return lambda_map(x);
  }
};

int critical_order(const SmoothExpr& f, double p) {
  SmoothExpr d = derive(f, 0);
  for (int k = 1; k <= 8; ++k) {
    if (std::abs(d({p})) > 1e-8) return k;
    d = derive(d, 0);
  }
  throw ValidationError("critical point at x=" + std::to_string(p) + " is degenerate beyond order 8");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

ModelFunction1D one_minimum_model() {
  ModelFunction1D m;
  m.f = parse_expr("2*x^3 - 9*x^2 + 12*x - 2", 1);
  const SmoothExpr f = m.f;
  m.lo = numerics::brent([&f](double x) { return f({x}) - 1.0; }, 0.0, 1.0, 1e-15, 400).x;
  m.hi = 2.5;
  m.n = 3;
  m.eps = {1.0, 1.0, 1.0};
  return m;
}

namespace {

double snap_to_level(const SmoothExpr& f, double x, bool inward_right) {
  const double target = std::round(f({x}));
  auto g = [&](double y) { return f({y}) - target; };
  if (g(x) == 0.0) return x;
  const double dir = inward_right ? 1.0 : -1.0;
  for (double step = 1e-3; step <= 0.25; step *= 2) {
    for (double side : {dir, -dir}) {
      const double y = x + side * step;
      if ((g(y) > 0) != (g(x) > 0)) return numerics::brent(g, std::min(x, y), std::max(x, y), 1e-15, 400).x;
    }
  }
  throw ParseError("domain endpoint " + fmt(x) + " is not near a level of f", 0);
}

}  // namespace

ModelFunction1D parse_model(std::string_view text) {
  ModelFunction1D m;
  bool have_f = false, have_domain = false, have_levels = false;
  std::size_t offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", line_offset);
    std::string key = line.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value = line.substr(colon + 1);
    std::istringstream vs(value);
    if (key == "f") {
      m.f = parse_expr(value, 1);
      have_f = true;
    } else if (key == "domain") {
      if (!(vs >> m.lo >> m.hi) || !(m.lo < m.hi))
        throw ParseError("domain needs two increasing numbers", line_offset + colon + 1);
      have_domain = true;
    } else if (key == "levels") {
      if (!(vs >> m.n) || m.n < 2)
        throw ParseError("levels needs an integer >= 2", line_offset + colon + 1);
      have_levels = true;
    } else if (key == "eps") {
      m.eps.clear();
      double e;
      while (vs >> e) {
        if (e == 0.0) throw ParseError("eps must be nonzero", line_offset + colon + 1);
        m.eps.push_back(e);
      }
    } else {
      throw ParseError("unknown key '" + key + "'", line_offset);
    }
  }
  if (!have_f || !have_domain || !have_levels)
    throw ParseError("model needs f, domain and levels", text.size());
  if (m.eps.empty()) m.eps.assign(m.n, 1.0);
  if (static_cast<int>(m.eps.size()) != m.n)
    throw ParseError("eps needs one value per level", text.size());
  m.lo = snap_to_level(m.f, m.lo, true);
  m.hi = snap_to_level(m.f, m.hi, false);
  return m;
}

GlobalLiftReport lift_global_1d(const ModelFunction1D& model, const Diffeo1D& phi,
                                const GlobalLiftOptions& options) {
  if (model.f.arity() != 1) throw ShapeError("model function must have one variable");
  if (static_cast<int>(model.eps.size()) != model.n) throw ShapeError("eps needs one value per level");
  for (int i = 1; i <= model.n; ++i)
    if (std::abs(phi(i) - i) > 1e-12)
      throw ValidationError("phi moves the exceptional value " + std::to_string(i) + " to " +
                            fmt(phi(i)));

  auto glue = std::make_shared<Glue>();
  glue->f = model.f;
  glue->df = derive(model.f, 0);
  glue->phi = phi;
  glue->prefactor = options.prefactor;
  glue->flow = options.flow;
  const SmoothExpr& f = glue->f;

  std::vector<double>& br = glue->breaks;
  br.push_back(model.lo);
  const double span = model.hi - model.lo;
  for (double c : zeros_1d(glue->df, model.lo, model.hi))
    if (c - model.lo > 1e-9 * span && model.hi - c > 1e-9 * span) br.push_back(c);
  br.push_back(model.hi);

  // Every breakpoint sits on a level; f is strictly monotone between them.
  std::vector<LevelPoint> level_points;
  for (std::size_t k = 0; k < br.size(); ++k) {
    const double v = f({br[k]});
    const int lv = nearest_level(v);
    if (std::abs(v - lv) > 1e-8 || lv < 1 || lv > model.n)
      throw ValidationError("value " + fmt(v) + " at x=" + fmt(br[k]) +
                            " is not one of the exceptional levels 1.." + std::to_string(model.n));
    const bool interior = k > 0 && k + 1 < br.size();
    level_points.push_back({br[k], lv, interior ? critical_order(f, br[k]) : 1});
  }
  for (std::size_t k = 0; k + 1 < br.size(); ++k) {
    const double sgn0 = glue->df({0.5 * (br[k] + br[k + 1])}) > 0 ? 1.0 : -1.0;
    for (double x : numerics::linspace(br[k], br[k + 1], 2001)) {
      if (x == br[k] || x == br[k + 1]) continue;
      if (!(glue->df({x}) * sgn0 > 0))
        throw ValidationError("f is not monotone on [" + fmt(br[k]) + ", " + fmt(br[k + 1]) + "]");
    }
    const int l0 = level_points[k].level, l1 = level_points[k + 1].level;
    for (int i = std::min(l0, l1) + 1; i < std::max(l0, l1); ++i)
      level_points.push_back({invert_monotone(f, br[k], br[k + 1], i), i, 1});
  }
  std::sort(level_points.begin(), level_points.end(),
            [](const LevelPoint& a, const LevelPoint& b) { return a.x < b.x; });

  const double w = options.window;
  for (const auto& lp : level_points) {
    Window win{lp.x, lp.level, lp.order, lp.x, lp.x, model.lo, model.hi, model.eps[lp.level - 1]};
    // Nearest breakpoints strictly to the left and right of the level point.
    const double tiny = 1e-12 * span;
    auto right = std::upper_bound(br.begin(), br.end(), lp.x + tiny);
    auto left = std::lower_bound(br.begin(), br.end(), lp.x - tiny);
    if (left != br.begin()) {
      const double c = *std::prev(left);
      const double edge = f({c}) > lp.level ? lp.level + w : lp.level - w;
      win.box_lo = c;
      win.a = invert_monotone(f, c, lp.x, edge);
    }
    if (right != br.end()) {
      const double c = *right;
      const double edge = f({c}) > lp.level ? lp.level + w : lp.level - w;
      win.box_hi = c;
      win.b = invert_monotone(f, lp.x, c, edge);
    }
    glue->windows.push_back(win);
  }

  GlobalLiftReport rep;
  rep.level_points = level_points;
  rep.grid = numerics::linspace(model.lo, model.hi, options.grid);
  for (double x : rep.grid) {
    const double hx = glue->h(x);
    rep.h_values.push_back(hx);
    rep.residual = std::max(rep.residual, std::abs(phi(f({x})) - f({hx})));
  }

  for (const auto& win : glue->windows) {
    std::vector<double> xs;
    for (double x : rep.grid)
      if (x > win.a && x < win.b) xs.push_back(x);
    for (double x : numerics::linspace(win.a, win.b, kWindowSamples + 2))
      if (x > win.a && x < win.b) xs.push_back(x);
    for (double x : xs) {
      const double s = f({x});
      if (s == win.level) continue;
      const double d = std::abs(glue->lambda_map(x) - glue->e_map(win, x));
      double& slot = s < win.level ? rep.coherency_lower : rep.coherency_upper;
      slot = std::max(slot, d);
      ++rep.window_samples;
    }
  }

  for (const auto& lp : level_points)
    rep.level_fixity = std::max(rep.level_fixity, std::abs(f({glue->h(lp.x)}) - lp.level));

  rep.h = [glue](double x) { return glue->h(x); };

  if (options.strict) {
    if (!(rep.residual <= options.residual_tol))
      throw ValidationError("global lift residual " + fmt(rep.residual) + " exceeds tolerance");
    const double coh = std::max(rep.coherency_lower, rep.coherency_upper);
    if (!(coh <= options.coherency_tol))
      throw ValidationError("lambda- and flow-based maps disagree by " + fmt(coh) +
                            " on the level windows");
    if (!(rep.level_fixity <= options.fixity_tol))
      throw ValidationError("lift moves a level point off its level by " + fmt(rep.level_fixity));
  }
  return rep;
}

}  // namespace jacobiflow
