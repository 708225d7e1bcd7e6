#pragma once

#include "selfstab/alpha_model.hpp"

namespace selfstab {

/// Certified truncation plan: simulate with marks |y| in [K, N) and the
/// expected sup-norm gap to the untruncated process is at most `bound`.
struct TruncationPlan {
  double epsilon = 0.0;  // target accuracy/probability
  double K = 1.0;        // small-|y| cutoff
  double N = 0.0;        // large-|y| cutoff N(epsilon)
  double bound = 0.0;    // achieved E||Z_N - Z||_inf bound, <= epsilon^2
};

/// Smallest integer N with
///   (2bT/(1-b)) * exp(2TM * (b/(1-b) log K + (b/(1-b))^2 K^{-(1-b)/b}))
///     * N^{-(1-b)/b}  <=  epsilon^2,
/// so that by Markov's inequality P(||Z_N - Z||_inf >= epsilon) < epsilon.
/// Requires K >= 1 and 0 < epsilon < 1; throws Infeasible when the required
/// N is not exactly representable (beyond 2^53).
TruncationPlan truncation_level(double epsilon, double horizon, const AlphaModel& alpha,
                                double K);

/// K = log(1/(1-epsilon)) / (2T): with this cutoff the count of excluded
/// small-|y| points is Poisson with mean 2KT, so the probability that any
/// exist is exactly epsilon, doubling the overall failure probability.
double small_jump_cutoff(double epsilon, double horizon);

}  // namespace selfstab
