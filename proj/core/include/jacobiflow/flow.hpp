#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "jacobiflow/diffeo.hpp"
#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

struct FlowOptions {
  /// Local error target per accepted step: rel_tol * |x| + abs_tol.
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double initial_step = 0.05;
  double min_step = 1e-13;
  long max_steps = 2'000'000;
};

using OdeRhs = std::function<void(std::span<const double> x, std::span<double> dx)>;

/// Classical RK4 with step doubling: each step is compared with two half
/// steps, the difference estimates the local error and the Richardson
/// combination is kept. Throws FlowError when the state leaves `box`
/// (if given) or the step size underflows. t = 0 returns x0 unchanged.
std::vector<double> integrate_ode(const OdeRhs& rhs, std::span<const double> x0, double t,
                                  const Box* box, const FlowOptions& options = {});

/// Flow of a vector field restricted to a domain box.
struct FlowSpec {
  VectorFieldExpr field;
  Box box;
  FlowOptions options;

  static FlowSpec one_dim(const SmoothExpr& alpha, double lo, double hi,
                          const FlowOptions& options = {});
};

std::vector<double> integrate_flow(const FlowSpec& spec, std::span<const double> x0, double t);
double integrate_flow_1d(const FlowSpec& spec, double s0, double t);

/// c(s, t) = (Phi(s, t) - s) / (t alpha(s)). When t = 0 or alpha(s) = 0 the
/// limit is taken by extrapolation over 6 dyadic samples (first step
/// `h0`); NumericalError if the estimate does not settle to 1e-6.
double flow_factor_c(const SmoothExpr& alpha, double s, double t, double h0 = 0.25,
                     const FlowOptions& options = {});

enum class AlphaCase { a, b };  // alpha'(0) = 1 or alpha'(0) = 0

/// alpha(0) = 0, alpha'(0) in {0, 1} and alpha != 0 on the punctured
/// dyadic grid +-2^{-j}, j = 1..30. Throws ValidationError otherwise.
AlphaCase classify_alpha(const SmoothExpr& alpha);

/// sigma with phi(s) = Phi_alpha(s, sigma(s)) on [a, b].
struct ShiftFunction {
  SmoothExpr alpha;
  Diffeo1D phi;
  double a = 0.0;
  double b = 0.0;
  /// On-demand evaluation; zeros of alpha are handled by extrapolation.
  std::function<double(double)> sigma;
  std::vector<double> grid;
  std::vector<double> values;
  double sigma_at_zero = 0.0;
  /// (phi - id) / alpha when phi is given as an expression.
  std::optional<SmoothExpr> g;
  /// max |Phi(s, sigma(s)) - phi(s)| over grid points with alpha(s) != 0.
  double verification_residual = 0.0;
};

struct ShiftOptions {
  int points = 201;
  double quad_tol = 1e-12;
  double limit_step = 1e-2;  // first offset of the dyadic samples at zeros of alpha
  double verify_tol = 1e-8;
  FlowOptions flow;
};

/// Time along the trajectory, sigma(s) = int_s^{phi(s)} dz / alpha(z).
ShiftFunction shift_function(const Diffeo1D& phi, const SmoothExpr& alpha, double a, double b,
                             const ShiftOptions& options = {});

/// sigma_{psi o phi}(s) = sigma_phi(s) + sigma_psi(phi(s)), re-verified.
ShiftFunction shift_compose(const ShiftFunction& phi, const ShiftFunction& psi,
                            const ShiftOptions& options = {});
/// sigma_{psi^{-1}}(s) = -sigma_psi(psi^{-1}(s)), re-verified on the image.
ShiftFunction shift_invert(const ShiftFunction& psi, const ShiftOptions& options = {});

enum class Tristate { yes, no, indeterminate };
std::string to_string(Tristate t);

/// Whether (phi(s) - s) / alpha(s) (divided by mu(s) when given) stays
/// bounded and settles as s -> 0 along s = +-2^{-j}, j <= 30.
Tristate v_membership(const Diffeo1D& phi, const SmoothExpr& alpha,
                      const std::optional<SmoothExpr>& mu = std::nullopt);

/// h_V(phi) = sigma(0). Throws ValidationError unless v_membership is yes.
double h_V(const Diffeo1D& phi, const SmoothExpr& alpha, const ShiftOptions& options = {});

struct EmbeddingReport {
  bool holds = false;
  double margin = 0.0;  // min over the grid of dLambda(F) + 1
};

/// dLambda(F) > -1 at every grid point, which makes x -> Phi(x, Lambda(x))
/// a local diffeomorphism.
EmbeddingReport embedding_criterion(const SmoothExpr& lambda, const VectorFieldExpr& field,
                                    const Box& box, int per_axis = 201);

}  // namespace jacobiflow
