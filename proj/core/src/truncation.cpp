#include "selfstab/truncation.hpp"

#include <cmath>

#include "selfstab/errors.hpp"

namespace selfstab {

TruncationPlan truncation_level(double epsilon, double horizon, const AlphaModel& alpha,
                                double K) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw DomainError("truncation_level: epsilon must be in (0,1)");
  if (!(K >= 1.0)) throw DomainError("truncation_level: requires K >= 1");
  if (!(horizon > 0.0)) throw DomainError("truncation_level: horizon must be positive");

  const double b = alpha.b();
  const double m = alpha.derivative_ratio_bound();
  const double r = b / (1.0 - b);
  // Prefactor of the expectation bound; N^{-1/r} multiplies it.
  const double prefactor =
      (2.0 * b * horizon / (1.0 - b)) *
      std::exp(2.0 * horizon * m * (r * std::log(K) + r * r * std::pow(K, -1.0 / r)));

  const double target = epsilon * epsilon;
  double n_real = std::pow(prefactor / target, r);
  if (!std::isfinite(n_real) || n_real > 0x1.0p53)
    throw Infeasible("truncation_level: required N " + std::to_string(n_real) +
                     " is not representable");
  double n = std::max(std::ceil(n_real), std::floor(K) + 1.0);
  TruncationPlan plan;
  plan.epsilon = epsilon;
  plan.K = K;
  plan.N = n;
  plan.bound = prefactor * std::pow(n, -1.0 / r);
  return plan;
}

double small_jump_cutoff(double epsilon, double horizon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw DomainError("small_jump_cutoff: epsilon must be in (0,1)");
  if (!(horizon > 0.0)) throw DomainError("small_jump_cutoff: horizon must be positive");
  return std::log(1.0 / (1.0 - epsilon)) / (2.0 * horizon);
}

}  // namespace selfstab
