#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jacobiflow {

enum class ExprOp : std::uint8_t {
  constant,
  variable,
  add,
  sub,
  mul,
  div,
  neg,
  pow,  // integer exponent stored in ExprNode::index
  exp,
  log,
  sin,
  cos,
  sgn,
  flatexp,  // e^{-1/|u|}, and exactly 0 at u = 0
  flatmul,  // flatexp(lhs) * rhs, exactly 0 wherever lhs = 0
};

struct ExprNode {
  ExprOp op = ExprOp::constant;
  int index = 0;  // variable index (0-based) or integer exponent
  mpq_class value;
  double approx = 0.0;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

namespace detail {
struct Program;
}

/// Closed-form smooth function R^m -> R as an immutable expression tree.
///
/// Variables are 0-based in the API (x1 in text is index 0). Literals are
/// kept as exact rationals so the polynomial sub-language can be lifted to
/// exact series; pointwise evaluation runs in double precision through a
/// compiled postfix program.
class SmoothExpr {
 public:
  SmoothExpr();
  SmoothExpr(int arity, ExprPtr root);

  static SmoothExpr constant(int arity, const mpq_class& value);
  static SmoothExpr variable(int arity, int index);

  int arity() const noexcept { return arity_; }
  const ExprPtr& root() const noexcept { return root_; }

  /// Throws DomainError on division by zero, log of a non-positive value or
  /// a non-finite result; ShapeError when the point has the wrong length.
  double operator()(std::span<const double> point) const;
  double operator()(std::initializer_list<double> point) const {
    return (*this)(std::span<const double>(point.begin(), point.size()));
  }

  std::optional<mpq_class> constant_value() const;
  bool is_zero() const;
  /// True when only constants, variables, + - * /(by constants) and
  /// non-negative integer powers occur.
  bool is_polynomial() const;

  std::string str() const;

 private:
  int arity_;
  ExprPtr root_;
  std::shared_ptr<const detail::Program> program_;
};

SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator/(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator-(const SmoothExpr& a);
SmoothExpr operator+(const SmoothExpr& a, const mpq_class& c);
SmoothExpr operator-(const SmoothExpr& a, const mpq_class& c);
SmoothExpr operator*(const mpq_class& c, const SmoothExpr& a);
SmoothExpr operator/(const SmoothExpr& a, const mpq_class& c);

SmoothExpr pow(const SmoothExpr& base, int exponent);
SmoothExpr exp(const SmoothExpr& u);
SmoothExpr log(const SmoothExpr& u);
SmoothExpr sin(const SmoothExpr& u);
SmoothExpr cos(const SmoothExpr& u);
SmoothExpr sgn(const SmoothExpr& u);
SmoothExpr flatexp(const SmoothExpr& u);
SmoothExpr flatmul(const SmoothExpr& u, const SmoothExpr& body);

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' ['-'] integer)?
///   base   := number | ident | '(' expr ')' | func '(' expr ')'
///   func   := exp | log | sin | cos | flatexp | sgn ; flatmul takes (expr, expr)
///   ident  := x1..x9 | x | y | z
SmoothExpr parse_expr(std::string_view text, int arity);

/// Exact symbolic partial derivative with respect to variable `index`.
SmoothExpr derive(const SmoothExpr& e, int index);

/// Replaces variable j by replacements[j]; the result takes the arity of
/// the replacements (which must agree).
SmoothExpr substitute(const SmoothExpr& e, std::span<const SmoothExpr> replacements);

/// Re-embeds `e` into `new_arity` variables, mapping x_j to x_{j+offset}.
SmoothExpr embed(const SmoothExpr& e, int new_arity, int offset = 0);

/// Vector field with SmoothExpr components that share one arity.
class VectorFieldExpr {
 public:
  VectorFieldExpr() = default;
  explicit VectorFieldExpr(std::vector<SmoothExpr> components);

  int arity() const noexcept { return arity_; }
  int size() const noexcept { return static_cast<int>(components_.size()); }
  const SmoothExpr& operator[](int i) const { return components_.at(i); }
  const std::vector<SmoothExpr>& components() const noexcept { return components_; }

  void operator()(std::span<const double> point, std::span<double> out) const;
  /// Components joined with ';'.
  std::string str() const;

 private:
  int arity_ = 0;
  std::vector<SmoothExpr> components_;
};

/// Parses components separated by ';'.
VectorFieldExpr parse_field(std::string_view text, int arity);

/// sum_i F_i * df/dx_i, built symbolically.
SmoothExpr directional_derivative(const SmoothExpr& f, const VectorFieldExpr& field);

/// Axis-aligned box in R^m.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int dimension() const noexcept { return static_cast<int>(lo.size()); }
  bool contains(std::span<const double> p) const;
  static Box cube(int dimension, double lo, double hi);
};

/// Tensor grid with `per_axis` points per axis (endpoints included),
/// flattened row-major.
std::vector<std::vector<double>> grid_points(const Box& box, int per_axis);

/// max |e(p)| over the grid; points where `e` raises DomainError are skipped
/// when `skip_singular` is set.
double max_abs_on_grid(const SmoothExpr& e, const Box& box, int per_axis,
                       bool skip_singular = false);

}  // namespace jacobiflow
