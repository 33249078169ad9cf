#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobiflow/diffeo.hpp"
#include "jacobiflow/flow.hpp"
#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

/// Data of a local lift: dd(f, F) = alpha(f) on `box`, and a target
/// diffeomorphism phi in V(alpha).
struct LiftProblem {
  SmoothExpr f;
  VectorFieldExpr field;
  SmoothExpr alpha;
  Diffeo1D phi;
  Box box;
  int grid = 201;
  /// Box the flow of F may visit; defaults to `box` enlarged 4x about its center.
  std::optional<Box> flow_box;
  double validation_tol = 1e-9;
  FlowOptions flow;
};

/// Throws ValidationError when |dd(f, F) - alpha(f)| exceeds the tolerance
/// on the problem grid.
void validate(const LiftProblem& p);

/// max over the grid of |Phi_alpha(f(x), t) - f(Phi_F(x, t))|.
double semiconjugacy_residual(const LiftProblem& p, double t);

struct LiftReport {
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> images;
  /// max |phi(f(x)) - f(h(x))|.
  double residual = 0.0;
  /// min of dLambda(F) + 1 for Lambda = sigma o f; positive means h is a
  /// local diffeomorphism everywhere on the grid.
  double embedding_margin = 0.0;
  bool embedding_holds = false;
};

/// h(x) = Phi_F(x, sigma(f(x))) evaluated on the problem grid.
LiftReport lift_diffeo(const LiftProblem& p);

/// max over the grid of |h_{phi2 o phi1}(x) - h_{phi2}(h_{phi1}(x))|.
double lift_homomorphism_residual(const LiftProblem& p, const Diffeo1D& phi1,
                                  const Diffeo1D& phi2);

/// A function on [lo, hi] whose exceptional values are the levels 1..n.
struct ModelFunction1D {
  SmoothExpr f;
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;
  /// eps[i-1] is the rate used near level i: the local field
  /// eps (f - i) / f' satisfies f(Phi(x, t)) - i = (f(x) - i) e^{eps t}.
  std::vector<double> eps;
};

/// f = 2x^3 - 9x^2 + 12x - 2 on [x0, 5/2] with f(x0) = 1: boundary level 1,
/// interior maximum at level 3 (x = 1), interior minimum at level 2 (x = 2),
/// boundary level 3.
ModelFunction1D one_minimum_model();

/// Text format, one "key: value" per line:
///   f: <expression in x>
///   domain: <lo> <hi>     (endpoints are snapped onto the nearest level)
///   levels: <n>
///   eps: <eps_1> ... <eps_n>   (optional, default all 1)
ModelFunction1D parse_model(std::string_view text);

enum class LevelPrefactor { inverse_eps, as_printed };

struct GlobalLiftOptions {
  int grid = 201;
  double window = 1.0 / 3.0;
  LevelPrefactor prefactor = LevelPrefactor::inverse_eps;
  double residual_tol = 1e-6;
  double coherency_tol = 1e-6;
  double fixity_tol = 1e-8;
  /// Throw ValidationError when a tolerance is exceeded.
  bool strict = true;
  FlowOptions flow;
};

struct LevelPoint {
  double x;
  int level;
  int order;  // 1 for regular points, k for f - i ~ c (x - p)^k
};

struct GlobalLiftReport {
  std::vector<LevelPoint> level_points;
  std::vector<double> grid;
  std::vector<double> h_values;
  double residual = 0.0;
  double coherency_lower = 0.0;  // windows f - i in (-w, 0)
  double coherency_upper = 0.0;  // windows f - i in (0, w)
  double level_fixity = 0.0;
  int window_samples = 0;
  std::function<double(double)> h;
};

/// Glues the regular-piece maps (inverse of f on each monotone piece applied
/// to phi o f) with the flow maps near each exceptional level, whose time is
/// e_i = (1/eps) ln beta(f) with beta(s) = (phi(s) - i) / (s - i).
GlobalLiftReport lift_global_1d(const ModelFunction1D& model, const Diffeo1D& phi,
                                const GlobalLiftOptions& options = {});

}  // namespace jacobiflow
