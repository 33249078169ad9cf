#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacobiflow/series.hpp"
#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

enum class MembershipStatus { member, non_member_up_to_N, obstructed };

std::string to_string(MembershipStatus s);

struct ObstructionPoint {
  double p;
  double value;  // f(p)
};

struct ObstructionReport {
  bool obstructed = false;
  /// Critical points in [0, b], one per dyadic shell, outermost shell first.
  std::vector<ObstructionPoint> positive_side;
  /// Same for [a, 0].
  std::vector<ObstructionPoint> negative_side;
  /// The geometric subsequence (|p_{i+1}| <= |p_i|/2) backing the verdict.
  std::vector<ObstructionPoint> certificate;
};

struct MembershipResult {
  MembershipStatus status = MembershipStatus::non_member_up_to_N;
  TruncSeries target;  // the series that has to lie in J(f)
  std::optional<std::vector<TruncSeries>> witness;
  TruncSeries residual;  // target - sum df/dx_i * F_i, truncated
  std::optional<ObstructionReport> certificate;
  int unknowns = 0;
  int equations = 0;
  int rank = 0;
};

/// Decides target = sum_i df/dx_i * F_i up to degree N by exact elimination.
/// Equations are taken monomial by monomial in graded order; pivots are the
/// graded-lex smallest remaining unknown and free unknowns are set to 0.
MembershipResult solve_target_membership(const TruncSeries& f, const TruncSeries& target);

/// f in J(f) up to the truncation degree of f.
MembershipResult solve_membership(const TruncSeries& f);

/// f^k in J(f).
MembershipResult solve_power_membership(const TruncSeries& f, int k);

/// alpha(f) in J(f) for a one-variable polynomial alpha with alpha(0) = 0.
MembershipResult solve_alpha_membership(const TruncSeries& f, const TruncSeries& alpha);

struct FieldFamily {
  enum class Kind { regular, homogeneous, brieskorn, chain };
  Kind kind = Kind::regular;
  int degree = 0;          // homogeneous
  std::vector<int> a;      // brieskorn / chain exponents
  std::vector<int> signs;  // brieskorn: +1/-1 per term (first is +1)
  std::vector<int> b;      // chain: x_{i}^{b_i} x_{i+1}^{a_{i+1}}

  static FieldFamily regular_point() { return {}; }
  static FieldFamily homogeneous_of(int n) { return {Kind::homogeneous, n, {}, {}, {}}; }
  static FieldFamily brieskorn_of(std::vector<int> a, std::vector<int> signs = {});
  static FieldFamily chain_of(std::vector<int> a, std::vector<int> b);
};

/// The explicit Euler-type field of the family. The shape of f is validated
/// exactly and the field is checked with dd(f, F) = f on a grid (1e-10).
VectorFieldExpr closed_form_field(const SmoothExpr& f, const FieldFamily& family);

/// H(x, y) = f(x) + g(y) with the block field (F(x), G(y)).
std::pair<SmoothExpr, VectorFieldExpr> combine_sum_field(const SmoothExpr& f,
                                                         const VectorFieldExpr& F,
                                                         const SmoothExpr& g,
                                                         const VectorFieldExpr& G);

struct DerivedField {
  SmoothExpr f;
  VectorFieldExpr field;
  /// Set when the field is only continuous across the zero set of g.
  bool sign_adjusted = false;
};

/// power(a): (g^a, G/a). flat: (flatexp(g), sgn(g) * g * G); the extra
/// sgn(g) keeps dd(f, F) = f on both sides of the zero set of g.
DerivedField derived_field_power(const SmoothExpr& g, const VectorFieldExpr& G, int a);
DerivedField derived_field_flat(const SmoothExpr& g, const VectorFieldExpr& G);

/// Searches the dyadic shells [2^{-j-1}, 2^{-j}] (j up to 40) on both sides
/// of 0 for critical points of f with f(p) != 0 accumulating at 0.
/// `fprime` must be the derivative of f as an expression; its zero set is
/// located through the factors that can vanish (arguments of flatexp,
/// bases of powers, product factors) so flat zeros are found exactly.
ObstructionReport accumulation_obstruction(const std::function<double(double)>& f,
                                           const SmoothExpr& fprime, double a, double b,
                                           double tol = 0.0);
ObstructionReport accumulation_obstruction(const SmoothExpr& f, double a, double b,
                                           double tol = 0.0);

/// f(x) = int_0^x flatexp(sin(1/t)^2) dt, an odd function with critical
/// points at 1/(pi n) where it does not vanish.
struct FlatOscillation {
  std::function<double(double)> f;
  SmoothExpr fprime;
};
FlatOscillation flat_oscillation_example();

}  // namespace jacobiflow
