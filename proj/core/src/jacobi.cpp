#include "jacobiflow/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "jacobiflow/error.hpp"

namespace jacobiflow {

std::string to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::member:
      return "member";
    case MembershipStatus::non_member_up_to_N:
      return "non_member_up_to_N";
    case MembershipStatus::obstructed:
      return "obstructed";
  }
  return "unknown";
}

namespace {

struct PivotRow {
  int col;
  std::vector<std::pair<int, mpq_class>> entries;  // excludes the pivot (coefficient 1)
  mpq_class rhs;
};

}  // namespace

MembershipResult solve_target_membership(const TruncSeries& f, const TruncSeries& target) {
  if (f.arity() != target.arity() || f.degree() != target.degree())
    throw ShapeError("target series shape differs from f");
  if (f.constant_term() != 0) throw ValidationError("f has a nonzero constant term");

  const int m = f.arity();
  const int n = f.degree();
  const std::vector<Monomial> monos = monomials_up_to(m, n);
  std::map<Monomial, int, GrlexLess> index;
  for (std::size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], static_cast<int>(k));

  std::vector<TruncSeries> partials;
  for (int i = 0; i < m; ++i) partials.push_back(series_partial(f, i));

  // Column (k, i) multiplies x^{monos[k]} in F_i; its id is k*m + i, so the
  // graded-lex order of monomials drives pivot selection.
  std::vector<std::vector<std::pair<int, mpq_class>>> rows(monos.size());
  int unknowns = 0;
  Monomial sum(m);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    const int dk = total_degree(monos[k]);
    for (int i = 0; i < m; ++i) {
      const TruncSeries& d = partials[i];
      if (d.is_zero() || dk + d.order() > n) continue;
      ++unknowns;
      const int col = static_cast<int>(k) * m + i;
      for (const auto& [e, c] : d.terms()) {
        if (total_degree(e) + dk > n) break;
        for (int t = 0; t < m; ++t) sum[t] = e[t] + monos[k][t];
        rows[index.at(sum)].emplace_back(col, c);
      }
    }
  }

  std::vector<PivotRow> pivots;
  std::unordered_map<int, int> pivot_of_col;
  for (std::size_t r = 0; r < monos.size(); ++r) {
    mpq_class rhs = target.coeff(monos[r]);
    if (rows[r].empty() && rhs == 0) continue;
    std::map<int, mpq_class> acc;
    std::set<int> pending;  // pivot indices whose column occurs in acc
    for (const auto& [col, c] : rows[r]) {
      acc[col] += c;
      if (auto it = pivot_of_col.find(col); it != pivot_of_col.end()) pending.insert(it->second);
    }
    // A pivot row only holds columns of later pivots or free columns, so
    // eliminating in creation order never reintroduces a finished column.
    while (!pending.empty()) {
      const int p = *pending.begin();
      pending.erase(pending.begin());
      const PivotRow& pr = pivots[p];
      auto hit = acc.find(pr.col);
      if (hit == acc.end()) continue;
      const mpq_class factor = hit->second;
      acc.erase(hit);
      rhs -= factor * pr.rhs;
      for (const auto& [col, c] : pr.entries) {
        auto [it, inserted] = acc.try_emplace(col, 0);
        it->second -= factor * c;
        if (it->second == 0) {
          acc.erase(it);
        } else if (inserted) {
          if (auto pv = pivot_of_col.find(col); pv != pivot_of_col.end()) pending.insert(pv->second);
        }
      }
    }
    for (auto it = acc.begin(); it != acc.end();) {
      if (it->second == 0)
        it = acc.erase(it);
      else
        ++it;
    }
    if (acc.empty()) continue;  // consistent or not, the residual decides
    PivotRow pr;
    pr.col = acc.begin()->first;
    const mpq_class lead = acc.begin()->second;
    pr.rhs = rhs / lead;
    for (auto it = std::next(acc.begin()); it != acc.end(); ++it)
      pr.entries.emplace_back(it->first, it->second / lead);
    pivot_of_col.emplace(pr.col, static_cast<int>(pivots.size()));
    pivots.push_back(std::move(pr));
  }

  std::unordered_map<int, mpq_class> value;
  for (auto p = pivots.rbegin(); p != pivots.rend(); ++p) {
    mpq_class v = p->rhs;
    for (const auto& [col, c] : p->entries)
      if (auto it = value.find(col); it != value.end()) v -= c * it->second;
    if (v != 0) value.emplace(p->col, v);
  }

  std::vector<TruncSeries> witness(m, TruncSeries(m, n));
  for (const auto& [col, v] : value) witness[col % m].set(monos[col / m], v);

  TruncSeries image(m, n);
  for (int i = 0; i < m; ++i) image = image + partials[i] * witness[i];

  MembershipResult result;
  result.target = target;
  result.residual = target - image;
  result.unknowns = unknowns;
  result.equations = static_cast<int>(monos.size());
  result.rank = static_cast<int>(pivots.size());
  result.status = result.residual.is_zero() ? MembershipStatus::member
                                            : MembershipStatus::non_member_up_to_N;
  if (result.status == MembershipStatus::member) result.witness = std::move(witness);
  return result;
}

MembershipResult solve_membership(const TruncSeries& f) { return solve_target_membership(f, f); }

MembershipResult solve_power_membership(const TruncSeries& f, int k) {
  if (k < 1) throw ShapeError("power must be a positive integer");
  if (f.constant_term() != 0) throw ValidationError("f has a nonzero constant term");
  const int ord = f.order();
  if (ord > 0 && k * ord > f.degree())
    throw ValidationError("k * order(f) = " + std::to_string(k * ord) +
                          " exceeds the truncation degree " + std::to_string(f.degree()));
  return solve_target_membership(f, series_pow(f, k));
}

MembershipResult solve_alpha_membership(const TruncSeries& f, const TruncSeries& alpha) {
  if (alpha.constant_term() != 0) throw ValidationError("alpha must vanish at 0");
  const TruncSeries a = alpha.truncated(f.degree());
  return solve_target_membership(f, series_compose(a, f));
}

// ---- closed-form fields ----------------------------------------------------

FieldFamily FieldFamily::brieskorn_of(std::vector<int> a, std::vector<int> signs) {
  FieldFamily fam;
  fam.kind = Kind::brieskorn;
  if (signs.empty()) signs.assign(a.size(), 1);
  fam.a = std::move(a);
  fam.signs = std::move(signs);
  return fam;
}

FieldFamily FieldFamily::chain_of(std::vector<int> a, std::vector<int> b) {
  FieldFamily fam;
  fam.kind = Kind::chain;
  fam.a = std::move(a);
  fam.b = std::move(b);
  return fam;
}

namespace {

int validation_grid(int m) {
  switch (m) {
    case 1:
      return 201;
    case 2:
      return 41;
    case 3:
      return 15;
    default:
      return 7;
  }
}

double identity_defect(const SmoothExpr& f, const VectorFieldExpr& F, const Box& box,
                       int per_axis) {
  const SmoothExpr lhs = directional_derivative(f, F);
  return max_abs_on_grid(lhs - f, box, per_axis, true);
}

void require_identity(const SmoothExpr& f, const VectorFieldExpr& F, double tol,
                      const std::string& what) {
  const int m = f.arity();
  const double defect = identity_defect(f, F, Box::cube(m, -1.0, 1.0), validation_grid(m));
  if (!(defect <= tol))
    throw ValidationError(what + ": dd(f, F) - f reaches " + std::to_string(defect) +
                          " on the validation grid");
}

TruncSeries exact_polynomial(const SmoothExpr& f) {
  return series_from_expr(f, std::max(1, polynomial_degree_bound(f)));
}

bool same_polynomial(const TruncSeries& a, const TruncSeries& b) {
  return a.terms() == b.terms();
}

}  // namespace

VectorFieldExpr closed_form_field(const SmoothExpr& f, const FieldFamily& family) {
  const int m = f.arity();
  const TruncSeries poly = exact_polynomial(f);
  auto x = [m](int i) { return SmoothExpr::variable(m, i); };
  std::vector<SmoothExpr> comps(m, SmoothExpr::constant(m, 0));

  switch (family.kind) {
    case FieldFamily::Kind::regular: {
      Monomial e(m, 0);
      e[0] = 1;
      const mpq_class c = poly.coeff(e);
      if (c == 0 || poly.terms().size() != 1)
        throw ValidationError("regular family expects f = c*x1");
      comps[0] = x(0);
      break;
    }
    case FieldFamily::Kind::homogeneous: {
      const int n = family.degree;
      if (n < 1) throw ValidationError("homogeneous degree must be positive");
      if (poly.is_zero()) throw ValidationError("homogeneous family expects a nonzero f");
      for (const auto& [e, c] : poly.terms())
        if (total_degree(e) != n)
          throw ValidationError("f has a term of degree " + std::to_string(total_degree(e)) +
                                ", expected all terms of degree " + std::to_string(n));
      for (int i = 0; i < m; ++i) comps[i] = x(i) / mpq_class(n);
      break;
    }
    case FieldFamily::Kind::brieskorn: {
      const auto& a = family.a;
      const int k = static_cast<int>(a.size());
      if (k < 1 || k > m) throw ValidationError("brieskorn family needs 1..m exponents");
      if (family.signs.size() != a.size())
        throw ValidationError("brieskorn family needs one sign per exponent");
      TruncSeries expected(m, poly.degree());
      for (int i = 0; i < k; ++i) {
        if (a[i] < 1) throw ValidationError("brieskorn exponents must be >= 1");
        Monomial e(m, 0);
        e[i] = a[i];
        expected.add_to(e, family.signs[i] < 0 ? -1 : 1);
      }
      if (!same_polynomial(poly, expected))
        throw ValidationError("f does not match x1^a1 +- ... +- xk^ak");
      for (int i = 0; i < k; ++i) comps[i] = x(i) / mpq_class(a[i]);
      break;
    }
    case FieldFamily::Kind::chain: {
      const auto& a = family.a;
      const auto& b = family.b;
      const int k = static_cast<int>(a.size());
      if (k < 1 || k > m || static_cast<int>(b.size()) != k - 1)
        throw ValidationError("chain family needs k exponents a_i and k-1 exponents b_i");
      TruncSeries expected(m, poly.degree());
      Monomial e(m, 0);
      e[0] = a[0];
      expected.add_to(e, 1);
      for (int i = 1; i < k; ++i) {
        Monomial t(m, 0);
        t[i - 1] = b[i - 1];
        t[i] = a[i];
        expected.add_to(t, 1);
      }
      if (!same_polynomial(poly, expected))
        throw ValidationError("f does not match x1^a1 + x1^b1 x2^a2 + ... + x_{k-1}^b_{k-1} xk^ak");
      // Weighted degrees: w1 = 1/a1, w_i = (1 - b_{i-1} w_{i-1}) / a_i.
      mpq_class w(1, a[0]);
      comps[0] = w * x(0);
      for (int i = 1; i < k; ++i) {
        w = (1 - b[i - 1] * w) / a[i];
        comps[i] = w * x(i);
      }
      break;
    }
  }
  VectorFieldExpr F(std::move(comps));
  require_identity(f, F, 1e-10, "closed-form field");
  return F;
}

std::pair<SmoothExpr, VectorFieldExpr> combine_sum_field(const SmoothExpr& f,
                                                         const VectorFieldExpr& F,
                                                         const SmoothExpr& g,
                                                         const VectorFieldExpr& G) {
  if (F.size() != f.arity() || F.arity() != f.arity())
    throw ShapeError("field F does not match f");
  if (G.size() != g.arity() || G.arity() != g.arity())
    throw ShapeError("field G does not match g");
  require_identity(f, F, 1e-10, "first block");
  require_identity(g, G, 1e-10, "second block");
  const int m = f.arity(), n = g.arity();
  SmoothExpr h = embed(f, m + n, 0) + embed(g, m + n, m);
  std::vector<SmoothExpr> comps;
  for (const auto& c : F.components()) comps.push_back(embed(c, m + n, 0));
  for (const auto& c : G.components()) comps.push_back(embed(c, m + n, m));
  VectorFieldExpr H(std::move(comps));
  require_identity(h, H, 1e-10, "combined field");
  return {h, H};
}

DerivedField derived_field_power(const SmoothExpr& g, const VectorFieldExpr& G, int a) {
  if (a < 1) throw ValidationError("power must be a positive integer");
  require_identity(g, G, 1e-10, "input pair");
  std::vector<SmoothExpr> comps;
  for (const auto& c : G.components()) comps.push_back(c / mpq_class(a));
  DerivedField out{pow(g, a), VectorFieldExpr(std::move(comps)), false};
  require_identity(out.f, out.field, 1e-8, "power field");
  return out;
}

DerivedField derived_field_flat(const SmoothExpr& g, const VectorFieldExpr& G) {
  require_identity(g, G, 1e-10, "input pair");
  const SmoothExpr scale = sgn(g) * g;
  std::vector<SmoothExpr> comps;
  for (const auto& c : G.components()) comps.push_back(scale * c);
  DerivedField out{flatexp(g), VectorFieldExpr(std::move(comps)), false};
  const int m = g.arity();
  for (const auto& p : grid_points(Box::cube(m, -1.0, 1.0), validation_grid(m))) {
    try {
      if (g(p) < 0) out.sign_adjusted = true;
    } catch (const DomainError&) {
    }
  }
  require_identity(out.f, out.field, 1e-8, "flat field");
  return out;
}

}  // namespace jacobiflow
