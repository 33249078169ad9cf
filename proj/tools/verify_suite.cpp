#include "verify_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "jacobiflow/config_space.hpp"
#include "jacobiflow/conjugator.hpp"
#include "jacobiflow/diffeo_factory.hpp"
#include "jacobiflow/error.hpp"
#include "jacobiflow/flow.hpp"
#include "jacobiflow/jacobi.hpp"
#include "jacobiflow/numerics.hpp"
#include "jacobiflow/series.hpp"

namespace jacobiflow::verify {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kMembershipDegree = 12;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Diffeo1D phi_of(const std::string& text, double lo, double hi) {
  return Diffeo1D::from_expr(parse_expr(text, 1), lo, hi);
}

// Runtime limits apply to criteria 1, 4 and 7.
double runtime_limit(int id) { return id == 1 ? 10.0 : id == 4 ? 5.0 : id == 7 ? 60.0 : 0.0; }

// Runs `body`, turning a library exception into a failed result.
template <class Body>
CriterionResult guarded(int id, std::string name, double threshold, Body body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.threshold = threshold;
  Stopwatch sw;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = sw.seconds();
  const double limit = runtime_limit(id);
  if (limit > 0 && r.seconds >= limit) {
    r.passed = false;
    r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(limit) + " s";
  }
  return r;
}

bool is_member_exact(const SmoothExpr& f, int degree) {
  const MembershipResult res = solve_membership(series_from_expr(f, degree));
  return res.status == MembershipStatus::member && res.residual.is_zero();
}

}  // namespace

std::vector<NamedGerm> simple_singularities() {
  std::vector<NamedGerm> out;
  for (int k = 1; k <= 6; ++k) out.push_back({"A" + std::to_string(k), "x^" + std::to_string(k), 1});
  for (int k = 4; k <= 6; ++k)
    out.push_back({"D" + std::to_string(k), "x^2*y + y^" + std::to_string(k - 1), 2});
  out.push_back({"E6", "x^3 + y^4", 2});
  out.push_back({"E7", "x^3 + x*y^3", 2});
  out.push_back({"E8", "x^3 + y^5", 2});
  return out;
}

CriterionResult simple_singularity_membership() {
  auto res = guarded(1, "simple-singularity membership at N=12", 10.0, [](CriterionResult& r) {
    int members = 0;
    std::string failed;
    const auto germs = simple_singularities();
    for (const auto& g : germs) {
      if (is_member_exact(parse_expr(g.expr, g.vars), kMembershipDegree))
        ++members;
      else
        failed += " " + g.name;
    }
    r.detail = std::to_string(members) + "/" + std::to_string(germs.size()) + " member with zero residual";
    if (!failed.empty()) r.detail += "; not member:" + failed;
    r.passed = members == static_cast<int>(germs.size());
  });
  res.measured = res.seconds;  // bound is the runtime
  return res;
}

CriterionResult euler_identity() {
  return guarded(2, "Euler identity on random homogeneous polynomials", 0.0, [](CriterionResult& r) {
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> arity(1, 3), degree(1, 6), coeff(-5, 5);
    int exact = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
      const int m = arity(rng), n = degree(rng);
      SmoothExpr f = SmoothExpr::constant(m, 0);
      while (f.is_zero()) {
        for (const auto& mono : monomials_up_to(m, n)) {
          if (total_degree(mono) != n) continue;
          const int c = coeff(rng);
          if (c == 0) continue;
          SmoothExpr term = SmoothExpr::constant(m, c);
          for (int i = 0; i < m; ++i)
            if (mono[i] > 0) term = term * pow(SmoothExpr::variable(m, i), mono[i]);
          f = f + term;
        }
      }
      std::vector<SmoothExpr> comps;
      for (int i = 0; i < m; ++i) comps.push_back(SmoothExpr::variable(m, i) / mpq_class(n));
      const SmoothExpr defect = directional_derivative(f, VectorFieldExpr(comps)) - f;
      if (series_from_expr(defect, n).is_zero()) ++exact;
    }
    r.measured = trials - exact;
    r.detail = std::to_string(exact) + "/" + std::to_string(trials) + " expand to exactly 0";
    r.passed = exact == trials;
  });
}

CriterionResult stable_equivalence() {
  return guarded(3, "stable-equivalence invariance f + y^2 - z^2", 0.0, [](CriterionResult& r) {
    int ok = 0;
    std::string failed;
    const auto germs = simple_singularities();
    for (const auto& g : germs) {
      const SmoothExpr f = parse_expr(g.expr, g.vars);
      const int m = g.vars + 2;
      const SmoothExpr y = SmoothExpr::variable(m, g.vars), z = SmoothExpr::variable(m, g.vars + 1);
      const SmoothExpr stab = embed(f, m) + y * y - z * z;
      if (is_member_exact(stab, kMembershipDegree))
        ++ok;
      else
        failed += " " + g.name;
    }
    r.measured = static_cast<double>(germs.size()) - ok;
    r.detail = std::to_string(ok) + "/" + std::to_string(germs.size()) + " stabilized germs member";
    if (!failed.empty()) r.detail += "; failing:" + failed;
    r.passed = ok == static_cast<int>(germs.size());
  });
}

CriterionResult shift_group_laws() {
  return guarded(4, "shift-function composition and inverse laws", 1e-7, [](CriterionResult& r) {
    struct Group {
      std::string alpha;
      std::vector<std::string> phis;
    };
    const std::vector<Group> groups = {
        {"x", {"2*x", "x + x^2/4", "x*exp(x/3)", "3*x/2"}},
        {"x^2", {"x + x^2/4", "x/(1 - x/2)", "x + x^3"}},
        {"x^3 + x^2", {"x + (x^3 + x^2)/4", "x + (x^3 + x^2)/3", "x - (x^3 + x^2)/10"}},
    };
    const double a = -0.5, b = 0.5;
    double worst = 0.0;
    int pairs = 0;
    for (const auto& g : groups) {
      const SmoothExpr alpha = parse_expr(g.alpha, 1);
      const std::size_t k = g.phis.size();
      for (std::size_t i = 0; i < k; ++i) {
        const Diffeo1D phi = phi_of(g.phis[i], -1.5, 1.5);
        const Diffeo1D psi = phi_of(g.phis[(i + 1) % k], -1.5, 1.5);
        const ShiftFunction sp = shift_function(phi, alpha, a, b);
        const ShiftFunction sq = shift_function(psi, alpha, std::min(a, phi(a)), std::max(b, phi(b)));
        const ShiftFunction comp = shift_compose(sp, sq);
        const ShiftFunction direct = shift_function(compose(psi, phi), alpha, a, b);
        const ShiftFunction inv = shift_invert(sp);
        worst = std::max({worst, sp.verification_residual, comp.verification_residual,
                          inv.verification_residual});
        for (std::size_t j = 0; j < comp.grid.size(); ++j)
          worst = std::max(worst, std::abs(comp.values[j] - direct.values[j]));
        // sigma_{phi^{-1}}(phi(s)) + sigma_phi(s) = 0
        for (std::size_t j = 0; j < sp.grid.size(); j += 10)
          worst = std::max(worst, std::abs(inv.sigma(phi(sp.grid[j])) + sp.values[j]));
        ++pairs;
      }
    }
    r.measured = worst;
    r.detail = std::to_string(pairs) + " (phi, alpha) pairs";
    r.passed = worst <= r.threshold;
  });
}

CriterionResult local_lift() {
  return guarded(5, "local lift phi o f = f o h on a 201^2 grid", 1e-7, [](CriterionResult& r) {
    const std::vector<std::string> phis = {"2*x", "x + x^2/4", "3*x", "x*exp(x/4)", "x + sin(x)/2"};
    LiftProblem p;
    p.f = parse_expr("x^2 + y^2", 2);
    p.field = parse_field("x/2; y/2", 2);
    p.alpha = parse_expr("x", 1);
    p.box = Box::cube(2, -1, 1);
    double worst = 0.0, margin = 1e300;
    for (const auto& text : phis) {
      p.phi = phi_of(text, -1, 3);
      const LiftReport rep = lift_diffeo(p);
      worst = std::max(worst, rep.residual);
      margin = std::min(margin, rep.embedding_margin);
    }
    const double hom = lift_homomorphism_residual(p, phi_of("2*x", -1, 3), phi_of("x + x^2/4", -1, 9));
    r.measured = worst;
    r.detail = "5 diffeomorphisms; homomorphism residual " + fmt(hom) + " (<= 1e-6); min margin " +
               fmt(margin);
    r.passed = worst <= r.threshold && hom <= 1e-6 && margin > 0;
  });
}

CriterionResult global_gluing() {
  return guarded(6, "global 1D gluing on the one-minimum model", 1e-6, [](CriterionResult& r) {
    GlobalLiftOptions opt;
    opt.strict = false;
    const GlobalLiftReport rep =
        lift_global_1d(one_minimum_model(), phi_of("x + 0.01*(x-1)*(x-2)*(x-3)", 1, 3), opt);
    r.measured = std::max({rep.residual, rep.coherency_lower, rep.coherency_upper});
    r.detail = "residual " + fmt(rep.residual) + ", coherency lower " + fmt(rep.coherency_lower) +
               " upper " + fmt(rep.coherency_upper) + " over " + std::to_string(rep.window_samples) +
               " window samples, level fixity " + fmt(rep.level_fixity);
    r.passed = rep.residual <= 1e-6 && rep.coherency_lower <= 1e-6 && rep.coherency_upper <= 1e-6 &&
               rep.level_fixity <= 1e-8;
  });
}

namespace {

// Uniform point of Delta_n = {lo < x_1 < .. < x_n < hi} with all gaps >= min_gap.
std::vector<double> random_simplex_point(std::mt19937& rng, int n, double lo, double hi,
                                         double min_gap) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> x(n);
    for (auto& v : x) v = u(rng);
    std::sort(x.begin(), x.end());
    double prev = lo;
    bool ok = true;
    for (double v : x) {
      ok = ok && v - prev >= min_gap;
      prev = v;
    }
    if (ok && hi - prev >= min_gap) return x;
  }
}

}  // namespace

CriterionResult interpolating_diffeo() {
  return guarded(7, "interpolating diffeomorphism properties", 1e-6, [](CriterionResult& r) {
    std::mt19937 rng(7);
    double worst_interp = 0.0, worst_id = 0.0;
    bool positive = true, identity_outside = true;
    double min_log_delta = INFINITY;
    const int samples = 100;
    for (int s = 0; s < samples; ++s) {
      const int n = 1 + s % 6;
      const auto x = random_simplex_point(rng, n, 0.0, n + 1.0, 1e-2);
      const InterpolatingDiffeo phi(x);
      for (double t : numerics::linspace(-0.5, n + 1.5, 1000)) {
        // delta = e^{ld} > 0 iff ld is finite; e^{ld} itself underflows below -745.
        const double ld = phi.log_delta(t);
        positive = positive && std::isfinite(ld);
        min_log_delta = std::min(min_log_delta, ld);
      }
      // phi(x, k) = int_0^k delta, integrated independently of the evaluator.
      double acc = 0.0;
      for (int k = 1; k <= n; ++k) {
        auto d = [&phi](double t) { return phi.delta(t); };
        acc += numerics::integrate(d, k - 1.0, k, 1e-12).value;
        worst_interp = std::max({worst_interp, std::abs(acc - x[k - 1]), std::abs(phi(k) - x[k - 1])});
      }
      for (double t : {-3.0, -1.0, -1e-9, 0.0, n + 1.0, n + 1.0 + 1e-9, n + 2.5})
        identity_outside = identity_outside && phi(t) == t;
    }
    for (int n = 1; n <= 6; ++n) {
      std::vector<double> id(n);
      for (int k = 0; k < n; ++k) id[k] = k + 1.0;
      const InterpolatingDiffeo phi(id);
      for (double t : numerics::linspace(-1.0, n + 2.0, 301)) worst_id = std::max(worst_id, std::abs(phi(t) - t));
    }
    r.measured = worst_interp;
    r.detail = "delta > 0: " + std::string(positive ? "yes" : "no") + " (min ln delta " + fmt(min_log_delta) +
               "); id off [0,n+1]: " +
               (identity_outside ? "exact" : "violated") + "; identity data error " + fmt(worst_id);
    r.passed = positive && identity_outside && worst_interp <= 1e-6 && worst_id <= 1e-10;
  });
}

CriterionResult section_right_inverse() {
  return guarded(8, "evaluation o section = id (line and circle)", 1e-6, [](CriterionResult& r) {
    std::mt19937 rng(8);
    double worst = 0.0;
    int cases = 0;
    auto circle_dist = [](double a, double b, int n) {
      const double d = mod_n(a - b, n);
      return std::min(d, n - d);
    };
    for (int n = 2; n <= 6; ++n) {
      for (int s = 0; s < 10; ++s) {
        const auto x = random_simplex_point(rng, n - 2, 1.0, n, 1e-2);
        const Diffeo1D phi = section_line(n, x);
        worst = std::max({worst, std::abs(phi(1.0) - 1.0), std::abs(phi(n) - n)});
        for (int k = 2; k <= n - 1; ++k) worst = std::max(worst, std::abs(phi(k) - x[k - 2]));
        ++cases;

        const auto xc = random_simplex_point(rng, n - 1, 0.0, n, 1e-2);
        const double shift = std::uniform_real_distribution<double>(0.0, n)(rng);
        const Diffeo1D c = section_circle(n, xc, shift);
        const SplitPoint<double> sp = split(evaluation_map(c, n));
        for (int k = 0; k < n - 1; ++k) worst = std::max(worst, circle_dist(sp.deltas[k], xc[k], n));
        worst = std::max(worst, circle_dist(sp.base, shift, n));
        ++cases;
      }
    }
    r.measured = worst;
    r.detail = std::to_string(cases) + " sections, n = 2..6";
    r.passed = worst <= r.threshold;
  });
}

CriterionResult parity_law() {
  return guarded(9, "shift parity equals brute-force permutation sign", 0.0, [](CriterionResult& r) {
    int mismatches = 0, cases = 0;
    for (int n = 1; n <= 10; ++n) {
      for (int d = 0; d <= n; ++d) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = (i + d) % n;
        int inversions = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        const Parity brute = inversions % 2 ? Parity::reverses : Parity::preserves;
        mismatches += brute != shift_parity(n, d);
        ++cases;
      }
    }
    r.measured = mismatches;
    r.detail = std::to_string(cases) + " (n, d) pairs, " + std::to_string(mismatches) + " mismatches";
    r.passed = mismatches == 0;
  });
}

CriterionResult obstruction_certificate() {
  return guarded(10, "accumulation certificate for the flat oscillation", 1e-6, [](CriterionResult& r) {
    const FlatOscillation ex = flat_oscillation_example();
    const ObstructionReport rep = accumulation_obstruction(ex.f, ex.fprime, -0.5, 0.5);
    double worst = 0.0;
    int positive_points = 0;
    std::string ns;
    for (const auto& pt : rep.certificate) {
      if (!(pt.p > 0)) continue;
      const double n = std::round(1.0 / (std::numbers::pi * pt.p));
      worst = std::max(worst, std::abs(pt.p - 1.0 / (std::numbers::pi * n)));
      if (pt.value > 0) ++positive_points;
      ns += " " + std::to_string(static_cast<long>(n));
    }
    r.measured = worst;
    r.detail = std::to_string(positive_points) + " certificate points with f(p) > 0, n =" + ns;
    r.passed = rep.obstructed && positive_points >= 3 && worst <= r.threshold;
  });
}

CriterionResult flow_factor_probe() {
  return guarded(11, "flow-factor probe c(0,t)", 1e-6, [](CriterionResult& r) {
    double worst_b = 0.0;
    for (const char* a : {"x^2", "x^3"})
      for (double t : {0.1, 0.5})
        worst_b = std::max(worst_b, std::abs(flow_factor_c(parse_expr(a, 1), 0.0, t) - 1.0));
    const double case_a = flow_factor_c(parse_expr("x", 1), 0.0, 1.0);
    const double err_a = std::abs(case_a - (std::numbers::e - 1.0));
    r.measured = std::max(worst_b, err_a);
    r.detail = "case B |c-1| " + fmt(worst_b) + "; case A c(0,1) = " + fmt(case_a) + " vs e-1";
    r.passed = worst_b <= 1e-6 && err_a <= 1e-6;
  });
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  out.push_back(simple_singularity_membership());
  out.push_back(euler_identity());
  out.push_back(stable_equivalence());
  out.push_back(shift_group_laws());
  out.push_back(local_lift());
  out.push_back(global_gluing());
  out.push_back(interpolating_diffeo());
  out.push_back(section_right_inverse());
  out.push_back(parity_law());
  out.push_back(obstruction_certificate());
  out.push_back(flow_factor_probe());
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": measured " << fmt(r.measured)
     << " (bound " << fmt(r.threshold) << "), " << r.detail << " [" << fmt(r.seconds) << " s]";
  return os.str();
}

}  // namespace jacobiflow::verify
