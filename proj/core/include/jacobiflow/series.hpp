#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

using Monomial = std::vector<int>;

int total_degree(const Monomial& e);

/// Graded order: lower total degree first, then lexicographically larger
/// exponent tuples first (x1^2 < x1*x2 < x2^2 within degree 2).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All exponent tuples of arity m with total degree <= N, in GrlexLess order.
std::vector<Monomial> monomials_up_to(int arity, int degree);

/// Multivariate power series with exact rational coefficients, truncated at
/// total degree N. Zero coefficients are never stored.
class TruncSeries {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexLess>;

  TruncSeries() : arity_(1), degree_(0) {}
  TruncSeries(int arity, int degree);

  static TruncSeries constant(int arity, int degree, const mpq_class& c);
  static TruncSeries variable(int arity, int degree, int index);

  int arity() const noexcept { return arity_; }
  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }

  mpq_class coeff(const Monomial& e) const;
  /// Monomials above the truncation degree are dropped silently.
  void set(const Monomial& e, const mpq_class& c);
  void add_to(const Monomial& e, const mpq_class& c);

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Lowest total degree carrying a nonzero coefficient; -1 for the zero series.
  int order() const;
  mpq_class constant_term() const;

  /// Same coefficients, new truncation degree (dropping terms above it).
  TruncSeries truncated(int degree) const;

  double operator()(std::span<const double> point) const;
  SmoothExpr to_expr() const;

  /// Header "vars=<m> degree=<N>" then one "<e1> ... <em> : p/q" line per term.
  std::string str() const;
  /// Human-readable polynomial, e.g. "1/2*x1 - 3*x1^2*x2".
  std::string pretty() const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

 private:
  int arity_;
  int degree_;
  Terms terms_;
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const mpq_class& c, const TruncSeries& a);

TruncSeries series_partial(const TruncSeries& a, int index);
TruncSeries series_pow(const TruncSeries& a, int k);
/// alpha(f) for a one-variable polynomial series alpha; requires f(0) = 0.
TruncSeries series_compose(const TruncSeries& alpha, const TruncSeries& f);

/// Exact coefficients of a polynomial expression (division only by
/// nonzero constants). Throws ValidationError otherwise.
TruncSeries series_from_expr(const SmoothExpr& e, int degree);

/// Upper bound on the total degree of a polynomial expression.
int polynomial_degree_bound(const SmoothExpr& e);

/// Inverse of TruncSeries::str(). Throws ParseError with a line-based offset.
TruncSeries parse_series(std::string_view text);

}  // namespace jacobiflow
