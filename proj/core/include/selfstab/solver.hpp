#pragma once

#include <functional>

#include "selfstab/alpha_model.hpp"
#include "selfstab/jump_function.hpp"
#include "selfstab/point_process.hpp"

namespace selfstab {

/// Single left-to-right pass: at each distinct jump time x the new value is
/// the old one plus the sum over co-located points of
/// signed_power(y, -1/alpha(pre-jump value)).  Exact and unconditional on
/// finite point sets; this is the primary algorithm.
JumpFunction solve_sequential(const PointSet& ps, const AlphaModel& alpha, double a0);

/// M * sum over all points of y_weight_ab(y, a, b).  Below 1 the fixed-point
/// operator is a contraction in sup norm.
double contraction_sum(const PointSet& ps, const AlphaModel& alpha);

/// Picard iteration of the fixed-point operator
///   K(f)(t) = a0 + sum_{x <= t} signed_power(y, -1/alpha(f(x-)))
/// from f == a0.  Requires contraction_sum(ps, alpha) < 1 (throws
/// NotContractive otherwise; solve_sequential needs no such condition) and
/// throws NoConvergence after max_iter.  Retained as a verification oracle
/// for the sequential pass.  `iterations`, when non-null, receives the
/// number of operator applications performed.
JumpFunction solve_picard(const PointSet& ps, const AlphaModel& alpha, double a0,
                          double tol, int max_iter, int* iterations = nullptr);

/// solve_sequential restricted to points with |y| <= n.
JumpFunction solve_truncated(const PointSet& ps, const AlphaModel& alpha, double a0,
                             double n);

/// Certified bound on ||f_n - f||_inf, product form:
///   prod_{|y|<=n} (1 + M * y_weight(y)) * sum_{|y|>n} |y|^{-1/b}.
double truncation_error_bound(const PointSet& ps, const AlphaModel& alpha, double n);

/// The weaker exponential form exp(M * sum_{|y|<=n} y_weight(y)) * tail;
/// always >= the product form.
double truncation_error_bound_exp(const PointSet& ps, const AlphaModel& alpha, double n);

/// Sequential pass with jump terms w(alpha(f(x-))) * signed_power(y, -1/alpha(f(x-))).
/// w must be bounded and continuously differentiable on [a,b].
JumpFunction solve_weighted(const PointSet& ps, const AlphaModel& alpha,
                            const std::function<double(double)>& w, double a0);

/// Non-autonomous variant: the exponent at jump location x is
/// alpha3(x, f(x-), g(x)), i.e. frozen at the jump time so that f stays
/// piecewise constant and causal.  alpha3 must map into (0,1); throws
/// RangeViolation otherwise.
JumpFunction solve_nonautonomous(
    const PointSet& ps, const std::function<double(double, double, double)>& alpha3,
    const std::function<double(double)>& g, double a0);

}  // namespace selfstab
