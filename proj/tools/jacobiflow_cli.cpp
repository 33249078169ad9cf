#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jacobiflow/config_space.hpp"
#include "jacobiflow/conjugator.hpp"
#include "jacobiflow/critical_points.hpp"
#include "jacobiflow/diffeo_factory.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/flow.hpp"
#include "jacobiflow/jacobi.hpp"
#include "jacobiflow/numerics.hpp"
#include "jacobiflow/series.hpp"
#include "report.hpp"
#include "verify_suite.hpp"

using namespace jacobiflow;
using tools::Report;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Default verification tolerance; JACOBIFLOW_TOL overrides it.
double default_tolerance() {
  const char* env = std::getenv("JACOBIFLOW_TOL");
  if (!env || !*env) return 1e-6;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (*end != '\0' || !(v > 0) || !std::isfinite(v))
    throw ValidationError(std::string("JACOBIFLOW_TOL must be a positive number, got '") + env + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  std::size_t offset = 0;
  for (; std::getline(ss, item, ','); offset += item.size() + 1) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size())
      throw ParseError("expected a number in list '" + text + "'", offset);
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty list", 0);
  return out;
}

// Exact rationals when every entry is an integer or p/q, doubles otherwise.
std::optional<std::vector<mpq_class>> parse_rational_list(const std::string& text) {
  std::vector<mpq_class> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty() || item.find_first_not_of("+-0123456789/") != std::string::npos) return std::nullopt;
    if (item.front() == '+') item.erase(0, 1);
    mpq_class q;
    if (q.set_str(item, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    out.push_back(q);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

template <class S>
std::string coords_str(const std::vector<S>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    if constexpr (std::is_same_v<S, mpq_class>)
      out += q_str(v[i]);
    else
      out += tools::format_double(v[i]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---- jacobi check ----

struct JacobiArgs {
  std::string expr;
  int vars = 1;
  int degree = 12;
  int power = 1;
  std::string alpha;
};

int run_jacobi(const JacobiArgs& a, Report& rep) {
  const SmoothExpr f = parse_expr(a.expr, a.vars);
  rep.set("f", f.str());
  rep.set("vars", a.vars);
  rep.set("degree", a.degree);
  if (!f.is_polynomial()) {
    if (a.vars != 1) throw ValidationError("non-polynomial germs are only probed in one variable");
    const ObstructionReport ob = accumulation_obstruction(f, -0.5, 0.5);
    rep.set("status", ob.obstructed ? "obstructed" : "indeterminate");
    auto& t = rep.table("certificate", {"p", "f"});
    for (const auto& c : ob.certificate) t.rows.push_back({c.p, c.value});
    return ob.obstructed ? kExitOk : kExitFailed;
  }
  const TruncSeries fs = series_from_expr(f, a.degree);
  MembershipResult res;
  if (!a.alpha.empty()) {
    const TruncSeries al = series_from_expr(parse_expr(a.alpha, 1), a.degree);
    rep.set("alpha", a.alpha);
    res = solve_alpha_membership(fs, al);
  } else if (a.power != 1) {
    rep.set("power", a.power);
    res = solve_power_membership(fs, a.power);
  } else {
    res = solve_membership(fs);
  }
  rep.set("status", to_string(res.status));
  rep.set("target", res.target.pretty());
  if (res.witness)
    for (std::size_t i = 0; i < res.witness->size(); ++i)
      rep.set("witness F" + std::to_string(i + 1), (*res.witness)[i].pretty());
  rep.set("residual", res.residual.pretty());
  rep.set("unknowns", res.unknowns);
  rep.set("equations", res.equations);
  rep.set("rank", res.rank);
  return res.status == MembershipStatus::member ? kExitOk : kExitFailed;
}

// ---- lift local / global ----

struct LiftLocalArgs {
  std::string f, field, alpha, phi;
  std::vector<double> box;
  int grid = 21;
};

int run_lift_local(const LiftLocalArgs& a, double tol, Report& rep) {
  if (a.box.size() % 2 != 0 || a.box.empty())
    throw ShapeError("--box takes lo hi per axis");
  const int m = static_cast<int>(a.box.size() / 2);
  LiftProblem p;
  p.f = parse_expr(a.f, m);
  p.field = parse_field(a.field, m);
  p.alpha = parse_expr(a.alpha, 1);
  p.grid = a.grid;
  for (int i = 0; i < m; ++i) {
    p.box.lo.push_back(a.box[2 * i]);
    p.box.hi.push_back(a.box[2 * i + 1]);
  }
  // phi lives on the value range of f, padded so the flow of alpha has room.
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& x : grid_points(p.box, std::min(a.grid, 41))) {
    const double v = p.f(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = 0.5 * (hi - lo) + 1.0;
  p.phi = Diffeo1D::from_expr(parse_expr(a.phi, 1), lo - pad, hi + pad);
  validate(p);
  const LiftReport lr = lift_diffeo(p);
  rep.set("dimension", m);
  rep.set("grid", a.grid);
  rep.set("points", lr.points.size());
  rep.set("residual", lr.residual);
  rep.set("embedding margin", lr.embedding_margin);
  rep.set("embedding holds", lr.embedding_holds);
  rep.set("tolerance", tol);
  const bool ok = lr.residual <= tol && lr.embedding_holds;
  rep.set("verified", ok);
  return ok ? kExitOk : kExitFailed;
}

struct LiftGlobalArgs {
  std::string model, phi, prefactor = "inverse-eps";
  int grid = 201;
};

int run_lift_global(const LiftGlobalArgs& a, double tol, Report& rep) {
  const ModelFunction1D model = parse_model(read_file(a.model));
  const Diffeo1D phi = Diffeo1D::from_expr(parse_expr(a.phi, 1), 1.0, model.n);
  GlobalLiftOptions opt;
  opt.grid = a.grid;
  opt.strict = false;
  opt.residual_tol = tol;
  opt.coherency_tol = tol;
  opt.prefactor = a.prefactor == "as-printed" ? LevelPrefactor::as_printed : LevelPrefactor::inverse_eps;
  const GlobalLiftReport gl = lift_global_1d(model, phi, opt);
  rep.set("f", model.f.str());
  rep.set("domain", std::vector<double>{model.lo, model.hi});
  rep.set("levels", model.n);
  rep.set("prefactor", a.prefactor);
  rep.set("residual", gl.residual);
  rep.set("coherency lower", gl.coherency_lower);
  rep.set("coherency upper", gl.coherency_upper);
  rep.set("level fixity", gl.level_fixity);
  rep.set("window samples", gl.window_samples);
  rep.set("tolerance", tol);
  const bool ok = gl.residual <= tol && gl.coherency_lower <= tol && gl.coherency_upper <= tol &&
                  gl.level_fixity <= opt.fixity_tol;
  rep.set("verified", ok);
  auto& lp = rep.table("level_points", {"x", "level", "order"});
  for (const auto& l : gl.level_points) lp.rows.push_back({l.x, double(l.level), double(l.order)});
  auto& ht = rep.table("lift", {"x", "h"});
  for (std::size_t i = 0; i < gl.grid.size(); ++i) ht.rows.push_back({gl.grid[i], gl.h_values[i]});
  return ok ? kExitOk : kExitFailed;
}

// ---- flow shift / factor ----

struct ShiftArgs {
  std::string alpha, phi;
  std::vector<double> interval;
  int points = 21;
};

int run_flow_shift(const ShiftArgs& a, double tol, Report& rep) {
  const SmoothExpr alpha = parse_expr(a.alpha, 1);
  const Diffeo1D phi = Diffeo1D::from_expr(parse_expr(a.phi, 1), a.interval[0], a.interval[1]);
  ShiftOptions opt;
  opt.points = a.points;
  opt.verify_tol = std::max(tol, opt.verify_tol);
  const ShiftFunction sf = shift_function(phi, alpha, a.interval[0], a.interval[1], opt);
  rep.set("alpha", alpha.str());
  rep.set("phi", a.phi);
  rep.set("interval", a.interval);
  if (a.interval[0] <= 0 && 0 <= a.interval[1]) {
    rep.set("sigma(0)", sf.sigma_at_zero);
    const Tristate v = v_membership(phi, alpha);
    rep.set("in V(alpha)", to_string(v));
    if (v == Tristate::yes) rep.set("h_V", sf.sigma_at_zero);
  }
  rep.set("verification residual", sf.verification_residual);
  auto& t = rep.table("sigma", {"s", "sigma"});
  for (std::size_t i = 0; i < sf.grid.size(); ++i) t.rows.push_back({sf.grid[i], sf.values[i]});
  return sf.verification_residual <= opt.verify_tol ? kExitOk : kExitFailed;
}

int run_flow_factor(const std::string& alpha_text, double s, double t, Report& rep) {
  const SmoothExpr alpha = parse_expr(alpha_text, 1);
  rep.set("alpha", alpha.str());
  rep.set("s", s);
  rep.set("t", t);
  try {
    rep.set("case", classify_alpha(alpha) == AlphaCase::a ? "A" : "B");
  } catch (const ValidationError&) {
    rep.set("case", "none");
  }
  rep.set("c", flow_factor_c(alpha, s, t));
  return kExitOk;
}

// ---- section line / circle ----

struct SectionArgs {
  int n = 3;
  std::string x;
  double shift = 0.0;
  int points = 0;
};

void section_table(Report& rep, const Diffeo1D& phi, double lo, double hi, int points) {
  auto& t = rep.table("section", {"t", "phi", "delta"});
  for (double s : numerics::linspace(lo, hi, points)) t.rows.push_back({s, phi(s), phi.derivative(s)});
}

int run_section_line(const SectionArgs& a, Report& rep) {
  const std::vector<double> x = a.x.empty() ? std::vector<double>{} : parse_list(a.x);
  const Diffeo1D phi = section_line(a.n, x);
  rep.set("n", a.n);
  rep.set("x", x);
  std::vector<double> eval;
  for (int k = 1; k <= a.n; ++k) eval.push_back(phi(k));
  rep.set("p_cr", eval);
  const int points = a.points > 0 ? a.points : 10 * (a.n + 1) + 1;
  section_table(rep, phi, 0.0, a.n + 1.0, points);
  return kExitOk;
}

int run_section_circle(const SectionArgs& a, Report& rep) {
  const std::vector<double> x = parse_list(a.x);
  const Diffeo1D phi = section_circle(a.n, x, a.shift);
  rep.set("n", a.n);
  rep.set("x", x);
  rep.set("shift", a.shift);
  const ConfigPoint<double> p = evaluation_map(phi, a.n);
  rep.set("p_cr", p.coords);
  const SplitPoint<double> sp = split(p);
  rep.set("split deltas", sp.deltas);
  rep.set("split base", sp.base);
  const int points = a.points > 0 ? a.points : 10 * a.n + 1;
  section_table(rep, phi, 0.0, double(a.n), points);
  return kExitOk;
}

// ---- confspace ----

template <class S>
void report_config(const ConfigPoint<S>& p, Report& rep) {
  rep.set("coords", coords_str(p.coords));
  const bool in_component = component_check(p);
  rep.set("in F°", in_component);
  rep.set("canonical rotation", coords_str(canonical_rotation(p).coords));
  if (!in_component) return;
  const SplitPoint<S> sp = split(p);
  rep.set("deltas", coords_str(sp.deltas));
  if constexpr (std::is_same_v<S, mpq_class>)
    rep.set("base", q_str(sp.base));
  else
    rep.set("base", sp.base);
}

int run_confspace_split(int n, const std::string& coords, Report& rep) {
  rep.set("n", n);
  if (auto q = parse_rational_list(coords)) {
    rep.set("arithmetic", "exact");
    report_config(make_config<mpq_class>(n, *q), rep);
  } else {
    rep.set("arithmetic", "double");
    report_config(make_config<double>(n, parse_list(coords)), rep);
  }
  return kExitOk;
}

// ---- exceptional values ----

int run_exceptional(const std::string& expr, const std::vector<double>& iv, bool circle, Report& rep) {
  const SmoothExpr f = parse_expr(expr, 1);
  rep.set("f", f.str());
  rep.set("interval", iv);
  rep.set("domain", circle ? "circle" : "interval");
  rep.set("exceptional values", exceptional_values(f, iv[0], iv[1], circle));
  return kExitOk;
}

// ---- demo discontinuity ----

// f' = flatexp(x^2) flatexp((x-1)^2) has flat critical points at 0 and 1.
// The perturbation g' = f' + lambda (1 - x) is C^r-close to f' but splits
// the critical set near 1, so the critical values move discontinuously.
int run_demo_discontinuity(int steps, Report& rep) {
  const double a = -0.5, b = 1.5;
  const SmoothExpr x = SmoothExpr::variable(1, 0);
  const SmoothExpr fp = parse_expr("flatexp(x^2)*flatexp((x-1)^2)", 1);
  auto primitive = [&](const SmoothExpr& d, double t) {
    return numerics::integrate([&](double s) { return d({s}); }, 0.0, t, 1e-14).value;
  };
  rep.set("f'", fp.str());
  rep.set("interval", std::vector<double>{a, b});
  rep.set("f(b)", primitive(fp, b));
  auto& t = rep.table("perturbation", {"lambda", "cr_distance", "critical_point", "critical_value"});
  for (int j = 0; j <= steps; ++j) {
    mpq_class lam = 0;
    if (j > 0) {
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(j));
      lam = mpq_class(1, 1) / den;
    }
    const SmoothExpr gp = lam == 0 ? fp : fp + lam * (SmoothExpr::constant(1, 1) - x);
    const double l = lam.get_d();
    // g - f = lambda (x - x^2/2); its C^2 norm on [a, b] is lambda max(|x - x^2/2|, |1 - x|, 1).
    double dist = 0.0;
    for (double s : numerics::linspace(a, b, 401))
      dist = std::max({dist, std::abs(s - s * s / 2), std::abs(1 - s), 1.0});
    dist *= l;
    for (double c : zeros_1d(gp, a, b)) t.rows.push_back({l, dist, c, primitive(gp, c)});
  }
  return kExitOk;
}

// ---- verify all ----

int run_verify(bool json) {
  const auto results = verify::run_all();
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    if (json) {
      nlohmann::ordered_json j;
      j["id"] = r.id;
      j["name"] = r.name;
      j["passed"] = r.passed;
      j["measured"] = std::isfinite(r.measured) ? nlohmann::ordered_json(r.measured)
                                                : nlohmann::ordered_json(tools::format_double(r.measured));
      j["threshold"] = r.threshold;
      j["detail"] = r.detail;
      arr.push_back(std::move(j));
    } else {
      std::cout << verify::format_line(r) << '\n';
    }
  }
  if (json) std::cout << arr.dump(2) << '\n';
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jacobiflow: Jacobi-ideal membership, shift functions and conjugating diffeomorphisms"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  bool json = false;
  app.add_flag("--json", json, "Emit the report as a JSON object");

  std::function<int(Report&, double)> action;

  // jacobi check
  JacobiArgs ja;
  auto* jacobi = app.add_subcommand("jacobi", "Jacobi-ideal membership")->require_subcommand(1);
  auto* jcheck = jacobi->add_subcommand("check", "Decide f in J(f) up to degree N");
  jcheck->add_option("--expr", ja.expr, "Polynomial germ")->required();
  jcheck->add_option("--vars", ja.vars, "Number of variables")->required()->check(CLI::Range(1, 9));
  jcheck->add_option("--degree", ja.degree, "Truncation degree N")->check(CLI::Range(1, 64));
  jcheck->add_option("--power", ja.power, "Decide f^k in J(f)")->check(CLI::Range(1, 64));
  jcheck->add_option("--alpha", ja.alpha, "Decide alpha(f) in J(f) for a polynomial alpha(s)");
  jcheck->callback([&] { action = [&](Report& r, double) { return run_jacobi(ja, r); }; });

  // lift local / global
  auto* lift = app.add_subcommand("lift", "Conjugating diffeomorphisms")->require_subcommand(1);
  LiftLocalArgs la;
  auto* llocal = lift->add_subcommand("local", "h with phi o f = f o h on a box");
  llocal->add_option("--f", la.f, "Function f")->required();
  llocal->add_option("--field", la.field, "Field F with dd(f, F) = alpha(f), components separated by ';'")
      ->required();
  llocal->add_option("--alpha", la.alpha, "alpha(s)")->required();
  llocal->add_option("--phi", la.phi, "phi(s)")->required();
  llocal->add_option("--box", la.box, "lo hi per axis")->required()->expected(2, 18);
  llocal->add_option("--grid", la.grid, "Grid points per axis")->check(CLI::Range(2, 2001));
  llocal->callback([&] { action = [&](Report& r, double tol) { return run_lift_local(la, tol, r); }; });

  LiftGlobalArgs lg;
  auto* lglobal = lift->add_subcommand("global", "Glued lift for a 1D model function");
  lglobal->add_option("--model", lg.model, "Model file")->required();
  lglobal->add_option("--phi", lg.phi, "phi(s) fixing the levels")->required();
  lglobal->add_option("--prefactor", lg.prefactor, "Flow time prefactor near levels")
      ->check(CLI::IsMember({"inverse-eps", "as-printed"}));
  lglobal->add_option("--grid", lg.grid, "Grid points")->check(CLI::Range(3, 100001));
  lglobal->callback([&] { action = [&](Report& r, double tol) { return run_lift_global(lg, tol, r); }; });

  // flow shift / factor
  auto* flow = app.add_subcommand("flow", "Shift functions along 1D flows")->require_subcommand(1);
  ShiftArgs sa;
  auto* fshift = flow->add_subcommand("shift", "sigma with phi(s) = Phi_alpha(s, sigma(s))");
  fshift->add_option("--alpha", sa.alpha, "alpha(s)")->required();
  fshift->add_option("--phi", sa.phi, "phi(s)")->required();
  fshift->add_option("--interval", sa.interval, "a b")->required()->expected(2);
  fshift->add_option("--points", sa.points, "Grid points")->check(CLI::Range(2, 100001));
  fshift->callback([&] { action = [&](Report& r, double tol) { return run_flow_shift(sa, tol, r); }; });

  std::string fa;
  double fs = 0.0, ft = 1.0;
  auto* ffactor = flow->add_subcommand("factor", "c(s, t) = (Phi(s, t) - s) / (t alpha(s))");
  ffactor->add_option("--alpha", fa, "alpha(s)")->required();
  ffactor->add_option("--s", fs, "s");
  ffactor->add_option("--t", ft, "t");
  ffactor->callback([&] { action = [&](Report& r, double) { return run_flow_factor(fa, fs, ft, r); }; });

  // section line / circle
  auto* section = app.add_subcommand("section", "Interpolating diffeomorphisms")->require_subcommand(1);
  SectionArgs sl, sc;
  auto* sline = section->add_subcommand("line", "phi fixing 1 and n with phi(k) = x_k");
  sline->add_option("--n", sl.n, "n")->required()->check(CLI::Range(2, 64));
  sline->add_option("--x", sl.x, "x_2,..,x_{n-1}");
  sline->add_option("--points", sl.points, "Table rows")->check(CLI::Range(2, 100001));
  sline->callback([&] { action = [&](Report& r, double) { return run_section_line(sl, r); }; });

  auto* scircle = section->add_subcommand("circle", "Circle map on R/nZ");
  scircle->add_option("--n", sc.n, "n")->required()->check(CLI::Range(2, 64));
  scircle->add_option("--x", sc.x, "x_2,..,x_n")->required();
  scircle->add_option("--shift", sc.shift, "Rotation added after phi");
  scircle->add_option("--points", sc.points, "Table rows")->check(CLI::Range(2, 100001));
  scircle->callback([&] { action = [&](Report& r, double) { return run_section_circle(sc, r); }; });

  // confspace split / parity
  auto* conf = app.add_subcommand("confspace", "Configuration space of the circle R/nZ")->require_subcommand(1);
  int cn = 3, cd = 1;
  std::string ccoords;
  auto* csplit = conf->add_subcommand("split", "Split a point of F° into gaps and base point");
  csplit->add_option("--n", cn, "n")->required()->check(CLI::Range(1, 1000));
  csplit->add_option("--coords", ccoords, "x_1,..,x_n")->required();
  csplit->callback([&] { action = [&](Report& r, double) { return run_confspace_split(cn, ccoords, r); }; });

  auto* cparity = conf->add_subcommand("parity", "Parity of the cyclic shift by d");
  cparity->add_option("--n", cn, "n")->required()->check(CLI::Range(1, 1000000));
  cparity->add_option("--d", cd, "d")->required();
  cparity->callback([&] {
    action = [&](Report& r, double) {
      r.set("n", cn);
      r.set("d", cd);
      r.set("parity", to_string(shift_parity(cn, cd)));
      return kExitOk;
    };
  });

  // exceptional values
  std::string ee;
  std::vector<double> ei;
  bool ecircle = false;
  auto* exc = app.add_subcommand("exceptional", "Boundary and critical values of f");
  exc->add_option("--expr", ee, "f(x)")->required();
  exc->add_option("--interval", ei, "a b")->required()->expected(2);
  exc->add_flag("--circle", ecircle, "Treat [a, b] as a circle (no boundary values)");
  exc->callback([&] { action = [&](Report& r, double) { return run_exceptional(ee, ei, ecircle, r); }; });

  // demo discontinuity
  auto* demo = app.add_subcommand("demo", "Documented demonstrations")->require_subcommand(1);
  int dsteps = 6;
  auto* ddisc = demo->add_subcommand("discontinuity", "Critical values under a C^r-small perturbation");
  ddisc->add_option("--steps", dsteps, "lambda = 10^-j for j = 1..steps")->check(CLI::Range(1, 12));
  ddisc->callback([&] { action = [&](Report& r, double) { return run_demo_discontinuity(dsteps, r); }; });

  // verify all
  auto* verify = app.add_subcommand("verify", "Acceptance suite")->require_subcommand(1);
  bool verify_run = false;
  verify->add_subcommand("all", "Run every acceptance criterion")->callback([&] { verify_run = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify_run) return run_verify(json);
    const double tol = default_tolerance();
    Report rep;
    const int code = action(rep, tol);
    std::cout << (json ? rep.json() : rep.text());
    return code;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ShapeError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}
