#pragma once

#include <vector>

#include "jacobiflow/smooth_expr.hpp"

namespace jacobiflow {

/// Sub-expressions whose zeros make up the zero set of `e`: product factors,
/// numerators, bases of positive powers and arguments of flatexp (which is
/// zero exactly where its argument is). Factors that never vanish (exp,
/// nonzero constants) are dropped.
std::vector<SmoothExpr> vanishing_factors(const SmoothExpr& e);

/// Zeros of a one-variable expression on [a, b], sampled at `samples`
/// points. Sign changes are bisected to full precision; touching zeros are
/// located where the derivative of a factor changes sign and the factor
/// itself is negligible there. Sorted and deduplicated.
std::vector<double> zeros_1d(const SmoothExpr& e, double a, double b, int samples = 4001);

}  // namespace jacobiflow
