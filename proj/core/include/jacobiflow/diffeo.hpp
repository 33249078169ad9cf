#pragma once

#include <functional>
#include <optional>
#include <string>

#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

/// Orientation-preserving diffeomorphism of an interval or of the circle
/// R / period*Z. Circle maps are stored through a lift F with
/// F(x + period) = F(x) + period.
class Diffeo1D {
 public:
  enum class Domain { interval, circle };
  using Fn = std::function<double(double)>;

  Diffeo1D() = default;

  static Diffeo1D from_expr(const SmoothExpr& e, double lo, double hi);
  /// `derivative` may be empty; a central difference is used then.
  static Diffeo1D from_functions(Fn value, Fn derivative, double lo, double hi,
                                 std::string label);
  static Diffeo1D circle_lift(Fn lift, Fn derivative, double period, std::string label);
  static Diffeo1D identity(double lo, double hi);

  Domain domain() const noexcept { return domain_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double period() const noexcept { return hi_ - lo_; }
  const std::string& label() const noexcept { return label_; }
  const std::optional<SmoothExpr>& expr() const noexcept { return expr_; }

  double operator()(double x) const { return value_(x); }
  double derivative(double x) const;
  /// Circle maps: the value reduced to [0, period).
  double circle_value(double x) const;
  /// Preimage by bracketing root-finding (tolerance near machine precision).
  double inverse(double y) const;

  /// min of the derivative over `samples` evenly spaced points of the domain.
  double min_derivative(int samples = 1001) const;

 private:
  Domain domain_ = Domain::interval;
  double lo_ = 0.0;
  double hi_ = 1.0;
  Fn value_;
  Fn derivative_;
  std::optional<SmoothExpr> expr_;
  std::string label_;
};

/// outer ∘ inner on the domain of `inner`.
Diffeo1D compose(const Diffeo1D& outer, const Diffeo1D& inner);
/// The inverse map on the image interval of `phi`.
Diffeo1D inverse_diffeo(const Diffeo1D& phi);

}  // namespace jacobiflow
